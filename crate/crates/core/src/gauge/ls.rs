//! The interval dgla: the free complete dgla on `a`, `b`
//! (degree 1) and `z` (degree 0) with `a`, `b` Maurer–Cartan and
//! `dz = [z,b] + Σ_n B_n/n! ad_z^n (b - a)`, truncated at a weight cap.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freealg::DerivationTable;
use crate::graded::{Generator, GradedElement};
use crate::scalar::Scalar;
use crate::structure::{AlgebraSpec, Kind};

use super::ncpoly::{LieBasis, NcAlgebra, NcPolynomial};
use super::{bernoulli_table, gauge_closed};

const A: u32 = 0;
const B: u32 = 1;
const Z: u32 = 2;

/// The truncated interval as an ordinary dgla spec, together with the
/// bracket basis it is written in.
#[derive(Debug, Clone)]
pub struct LsPresentation<S: Scalar> {
    pub spec: AlgebraSpec<S>,
    pub basis: LieBasis<S>,
    /// Differential of each basis element inside the tensor algebra.
    pub differentials: Vec<NcPolynomial<S>>,
}

/// Outcome of the four interval checks.
#[derive(Debug, Clone)]
pub struct LsReport {
    pub weight: u32,
    pub mc_a: std::result::Result<(), String>,
    pub mc_b: std::result::Result<(), String>,
    pub gauge: std::result::Result<(), String>,
    pub d_squared: std::result::Result<(), String>,
}

impl LsReport {
    pub fn passed(&self) -> bool {
        self.mc_a.is_ok() && self.mc_b.is_ok() && self.gauge.is_ok() && self.d_squared.is_ok()
    }

    /// One `(label, outcome)` pair per check.
    pub fn checks(&self) -> [(&'static str, &std::result::Result<(), String>); 4] {
        [
            ("MC(a)", &self.mc_a),
            ("MC(b)", &self.mc_b),
            ("a = e^z·b", &self.gauge),
            ("d² = 0", &self.d_squared),
        ]
    }
}

fn ls_algebra(weight_cap: u32) -> NcAlgebra {
    NcAlgebra::new(
        vec![
            Generator::new("a", 1, 1),
            Generator::new("b", 1, 1),
            Generator::new("z", 0, 1),
        ],
        weight_cap,
    )
}

/// The derivation of the tensor algebra `T(a, b, z)` inducing the interval
/// differential.
fn ls_derivation<S: Scalar>(alg: &NcAlgebra) -> DerivationTable<S> {
    let alph = alg.alphabet();
    let (a, b, z) = (alph.gen::<S>(A), alph.gen::<S>(B), alph.gen::<S>(Z));
    let mut d = DerivationTable::zero(alph, 1);
    // da = -½[a,a] = -aa
    d.set(A, alg.mul(&a, &a).scaled(&-S::one()));
    d.set(B, alg.mul(&b, &b).scaled(&-S::one()));
    let bern = bernoulli_table::<S>(alph.weight_cap() as usize);
    let mut dz = alg.commutator(&z, &b);
    let mut ad = &b - &a;
    for (n, bn) in bern.iter().enumerate() {
        if ad.is_zero() {
            break;
        }
        dz.add_scaled(&ad, &(bn.clone() * S::inv_factorial(n)));
        ad = alg.commutator(&z, &ad);
    }
    d.set(Z, dz);
    d
}

fn require_positive(weight_cap: u32) -> Result<()> {
    if weight_cap == 0 {
        Err(Error::InvalidInput("weight cap must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Builds the interval truncated at weight `weight_cap`.
pub fn ls_interval<S: Scalar>(weight_cap: u32) -> Result<LsPresentation<S>> {
    require_positive(weight_cap)?;
    let alg = ls_algebra(weight_cap);
    let d = ls_derivation::<S>(&alg);
    let basis = LieBasis::<S>::build(alg.clone());
    let alph = alg.alphabet();
    let names: Vec<String> = basis.elements.iter().map(|e| e.name.clone()).collect();
    let to_element = |p: &NcPolynomial<S>, what: &str| -> Result<GradedElement<S>> {
        let (combo, rest) = basis.express(p);
        if !rest.is_zero() {
            return Err(Error::InvalidInput(format!(
                "{what} is not a Lie element: remainder {}",
                alph.display(&rest)
            )));
        }
        Ok(GradedElement::from_terms(
            combo.into_iter().map(|(i, c)| (names[i].clone(), c)),
        ))
    };

    let mut builder = AlgebraSpec::builder(format!("LS{weight_cap}"), Kind::Dgla, weight_cap, 2);
    for e in &basis.elements {
        builder.add_generator(Generator::new(e.name.clone(), e.degree, e.weight));
    }
    let mut differentials = Vec::with_capacity(basis.elements.len());
    for e in &basis.elements {
        let dp = alph.apply_derivation(&d, &e.poly)?;
        let value = to_element(&dp, &format!("d{}", e.name))?;
        if !value.is_zero() {
            builder.add_op(vec![e.name.clone()], value);
        }
        differentials.push(dp);
    }
    // brackets between basis elements, keyed in canonical generator order
    let canonical: Vec<Generator> = {
        let mut g: Vec<Generator> = basis
            .elements
            .iter()
            .map(|e| Generator::new(e.name.clone(), e.degree, e.weight))
            .collect();
        g.sort_by(|p, q| p.canonical_cmp(q));
        g
    };
    let index: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    for (i, p) in canonical.iter().enumerate() {
        for q in &canonical[i..] {
            if p.weight + q.weight > weight_cap {
                continue;
            }
            let pp = &basis.elements[index[p.name.as_str()]].poly;
            let qp = &basis.elements[index[q.name.as_str()]].poly;
            let br = alg.commutator(pp, qp);
            if br.is_zero() {
                continue;
            }
            let value = to_element(&br, &format!("[{},{}]", p.name, q.name))?;
            if !value.is_zero() {
                builder.add_op(vec![p.name.clone(), q.name.clone()], value);
            }
        }
    }
    let spec = builder.build()?;
    Ok(LsPresentation {
        spec,
        basis,
        differentials,
    })
}

fn outcome<S: Scalar>(
    spec: &AlgebraSpec<S>,
    residue: Result<GradedElement<S>>,
) -> std::result::Result<(), String> {
    match residue {
        Ok(r) if r.is_zero() => Ok(()),
        Ok(r) => Err(format!("residue {}", r.display(spec))),
        Err(e) => Err(e.to_string()),
    }
}

/// Checks `MC(a)`, `MC(b)`, `e^z · b = a` and `d² = 0` exactly up to the
/// weight cap.
pub fn verify_ls<S: Scalar>(weight_cap: u32) -> Result<LsReport> {
    let ls = ls_interval::<S>(weight_cap)?;
    Ok(verify_presentation(&ls, weight_cap))
}

fn verify_presentation<S: Scalar>(ls: &LsPresentation<S>, weight_cap: u32) -> LsReport {
    let spec = &ls.spec;
    let a = GradedElement::generator("a");
    let b = GradedElement::generator("b");
    let z = GradedElement::generator("z");
    let mc_a = outcome(spec, spec.mc_defect(&a));
    let mc_b = outcome(spec, spec.mc_defect(&b));
    let gauge = outcome(spec, gauge_closed(spec, &z, &b).map(|g| &g - &a));
    let alg = ls.basis.algebra();
    let d = ls_derivation::<S>(alg);
    let mut failures = Vec::new();
    for (e, dp) in ls.basis.elements.iter().zip(&ls.differentials) {
        match alg.alphabet().apply_derivation(&d, dp) {
            Ok(dd) if dd.is_zero() => {}
            Ok(dd) => failures.push(format!("d²{} = {}", e.name, alg.display(&dd))),
            Err(err) => failures.push(err.to_string()),
        }
    }
    let d_squared = if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    };
    LsReport {
        weight: weight_cap,
        mc_a,
        mc_b,
        gauge,
        d_squared,
    }
}

/// Result of checking that `a ↦ ξ, b ↦ η, z ↦ x` extends to a dgla map
/// from the interval.
#[derive(Debug, Clone)]
pub struct WitnessReport<S: Scalar> {
    /// Basis elements `P` of the interval with `h(dP) ≠ d(h(P))`, and the
    /// difference.
    pub failures: Vec<(String, GradedElement<S>)>,
}

impl<S: Scalar> WitnessReport<S> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Extends `h(a) = ξ`, `h(b) = η`, `h(z) = x` to the interval truncated at
/// the weight cap and checks `h ∘ d = d ∘ h` on every basis element.
/// This passes exactly when `ξ = e^x · η`.
pub fn homotopy_witness_check<S: Scalar>(
    spec: &AlgebraSpec<S>,
    xi: &GradedElement<S>,
    eta: &GradedElement<S>,
    x: &GradedElement<S>,
) -> Result<WitnessReport<S>> {
    if spec.kind() != Kind::Dgla {
        return Err(Error::Kind(format!(
            "homotopy witnesses need kind dgla, got {}",
            spec.kind()
        )));
    }
    xi.require_degree(spec, 1)?;
    eta.require_degree(spec, 1)?;
    x.require_degree(spec, 0)?;
    let ls = ls_interval::<S>(spec.weight_cap())?;
    let letters = [xi.clone(), eta.clone(), x.clone()];
    let images = ls
        .basis
        .images(&letters, |p, q| spec.eval_bracket(&[p.clone(), q.clone()]))?;
    let mut failures = Vec::new();
    for ((e, dp), hp) in ls.basis.elements.iter().zip(&ls.differentials).zip(&images) {
        let (combo, rest) = ls.basis.express(dp);
        debug_assert!(rest.is_zero());
        let mut h_of_d = GradedElement::zero();
        for (i, c) in combo {
            h_of_d.add_scaled(&images[i], &c);
        }
        let d_of_h = if hp.is_zero() {
            GradedElement::zero()
        } else {
            spec.eval_bracket(std::slice::from_ref(hp))?
        };
        let diff = &h_of_d - &d_of_h;
        if !diff.is_zero() {
            failures.push((e.name.clone(), diff));
        }
    }
    Ok(WitnessReport { failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn dz_to_weight_two() {
        let ls = ls_interval::<Rational>(2).unwrap();
        let dz = ls
            .spec
            .eval_bracket(&[GradedElement::generator("z")])
            .unwrap();
        assert_eq!(dz.display(&ls.spec), "-a + b - 1/2 [a,z] - 1/2 [b,z]");
        let da = ls
            .spec
            .eval_bracket(&[GradedElement::generator("a")])
            .unwrap();
        assert_eq!(da.display(&ls.spec), "-1/2 [a,a]");
        assert!(ls.spec.validate_structure().is_ok());
    }

    #[test]
    fn weight_one_and_zero() {
        assert!(verify_ls::<Rational>(1).unwrap().passed());
        assert!(verify_ls::<Rational>(0).is_err());
    }

    #[test]
    fn witness_on_trivial_action() {
        let spec = AlgebraSpec::<Rational>::builder("F1", Kind::Dgla, 2, 2)
            .generator("x", 0, 1)
            .generator("u", 1, 1)
            .generator("v", 1, 2)
            .op(&["x", "u"], GradedElement::generator("v"))
            .build()
            .unwrap();
        let u = GradedElement::generator("u");
        let r = homotopy_witness_check(&spec, &u, &u, &GradedElement::zero()).unwrap();
        assert!(r.passed());
    }
}
