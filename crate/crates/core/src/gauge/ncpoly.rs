//! Truncated noncommutative polynomials: exponential, logarithm, inverse,
//! Baker–Campbell–Hausdorff, free Lie bases, and the dga gauge action.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Flavor, FreeElement, Monomial};
use crate::graded::{Generator, GradedElement};
use crate::scalar::Scalar;
use crate::structure::{AlgebraSpec, Kind};

use super::require_mc;

/// An element of a truncated free tensor algebra.
pub type NcPolynomial<S> = FreeElement<S>;

/// The free tensor algebra on weighted, graded symbols, truncated at a
/// weight cap.
#[derive(Debug, Clone)]
pub struct NcAlgebra {
    alphabet: Alphabet,
}

impl NcAlgebra {
    pub fn new(symbols: Vec<Generator>, weight_cap: u32) -> Self {
        NcAlgebra {
            alphabet: Alphabet::new(Flavor::Tensor, symbols, weight_cap),
        }
    }

    /// Symbols of weight 1 and degree 0.
    pub fn with_symbols(names: &[&str], weight_cap: u32) -> Self {
        Self::new(
            names.iter().map(|n| Generator::new(*n, 0, 1)).collect(),
            weight_cap,
        )
    }

    /// The tensor algebra on the generators of a spec.
    pub fn for_spec<S: Scalar>(spec: &AlgebraSpec<S>) -> Self {
        Self::new(spec.generators().to_vec(), spec.weight_cap())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbol<S: Scalar>(&self, name: &str) -> Result<NcPolynomial<S>> {
        let g = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.alphabet.gen(g))
    }

    /// Builds a polynomial from words given by symbol names.
    pub fn from_named_words<S: Scalar>(
        &self,
        words: impl IntoIterator<Item = (Vec<String>, S)>,
    ) -> Result<NcPolynomial<S>> {
        let mut resolved = Vec::new();
        for (w, c) in words {
            let mut m = Vec::with_capacity(w.len());
            for name in &w {
                m.push(
                    self.alphabet
                        .index_of(name)
                        .ok_or_else(|| Error::UnknownGenerator(name.clone()))?,
                );
            }
            resolved.push((m, c));
        }
        Ok(self.alphabet.from_words(resolved))
    }

    pub fn one<S: Scalar>(&self) -> NcPolynomial<S> {
        self.alphabet.one()
    }

    pub fn mul<S: Scalar>(&self, a: &NcPolynomial<S>, b: &NcPolynomial<S>) -> NcPolynomial<S> {
        self.alphabet.mul(a, b)
    }

    /// Graded commutator `[p, q] = pq - (-1)^{|p||q|} qp`, extended
    /// bilinearly over monomials.
    pub fn commutator<S: Scalar>(
        &self,
        p: &NcPolynomial<S>,
        q: &NcPolynomial<S>,
    ) -> NcPolynomial<S> {
        let mut out = FreeElement::zero(Flavor::Tensor);
        for (mp, cp) in p.terms() {
            for (mq, cq) in q.terms() {
                let c = cp.clone() * cq.clone();
                let odd = (self.alphabet.monomial_degree(mp) * self.alphabet.monomial_degree(mq))
                    .rem_euclid(2)
                    == 1;
                let mut pq = mp.clone();
                pq.extend_from_slice(mq);
                let mut qp = mq.clone();
                qp.extend_from_slice(mp);
                let words = [(pq, c.clone()), (qp, if odd { c } else { -c })];
                out.add_scaled(&self.alphabet.from_words(words), &S::one());
            }
        }
        out
    }

    fn series<S: Scalar>(
        &self,
        u: &NcPolynomial<S>,
        coeff: impl Fn(usize) -> S,
    ) -> NcPolynomial<S> {
        // u has no constant term, so u^n vanishes once n exceeds the cap
        let mut sum = FreeElement::scalar(Flavor::Tensor, coeff(0));
        let mut power = self.one();
        for n in 1..=self.alphabet.weight_cap() as usize {
            power = self.mul(&power, u);
            if power.is_zero() {
                break;
            }
            sum.add_scaled(&power, &coeff(n));
        }
        sum
    }

    pub fn exp_assoc<S: Scalar>(&self, x: &NcPolynomial<S>) -> Result<NcPolynomial<S>> {
        if !x.constant_term().is_zero() {
            return Err(Error::Precondition(
                "exp_assoc needs zero constant term".into(),
            ));
        }
        Ok(self.series(x, S::inv_factorial))
    }

    pub fn log_assoc<S: Scalar>(&self, a: &NcPolynomial<S>) -> Result<NcPolynomial<S>> {
        if a.constant_term() != S::one() {
            return Err(Error::Precondition(
                "log_assoc needs constant term 1".into(),
            ));
        }
        let u = a - &self.one();
        Ok(self.series(&u, |n| {
            if n == 0 {
                S::zero()
            } else {
                S::sign(n % 2 == 0) / S::from_int(n as i64)
            }
        }))
    }

    /// `a^{-1}` for `a = c(1 + u)` with `c ≠ 0` and `u` nilpotent.
    pub fn invert_unital<S: Scalar>(&self, a: &NcPolynomial<S>) -> Result<NcPolynomial<S>> {
        let c = a.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible("constant term is zero".into()));
        }
        let inv_c = S::one() / c;
        let u = (a - &FreeElement::scalar(Flavor::Tensor, a.constant_term())).scaled(&inv_c);
        Ok(self.series(&u, |n| S::sign(n % 2 == 1)).scaled(&inv_c))
    }

    /// `log(e^x e^y)`.
    pub fn bch<S: Scalar>(
        &self,
        x: &NcPolynomial<S>,
        y: &NcPolynomial<S>,
    ) -> Result<NcPolynomial<S>> {
        let product = self.mul(&self.exp_assoc(x)?, &self.exp_assoc(y)?);
        self.log_assoc(&product)
    }

    pub fn display<S: Scalar>(&self, p: &NcPolynomial<S>) -> String {
        self.alphabet.display(p)
    }

    /// Rewrites `p` in the right-normed bracket basis of the free Lie
    /// algebra. A nonzero remainder means `p` is not a Lie element.
    pub fn lie_decomposition<S: Scalar>(&self, p: &NcPolynomial<S>) -> LieDecomposition<S> {
        let basis = LieBasis::build(self.clone());
        let (combo, remainder) = basis.express(p);
        LieDecomposition {
            terms: combo
                .into_iter()
                .map(|(i, c)| (basis.elements[i].name.clone(), c))
                .collect(),
            remainder,
        }
    }
}

/// A polynomial written as a combination of bracket basis elements.
#[derive(Debug, Clone)]
pub struct LieDecomposition<S: Scalar> {
    /// Bracket expressions such as `[x,[x,y]]` with their coefficients.
    pub terms: Vec<(String, S)>,
    pub remainder: NcPolynomial<S>,
}

impl<S: Scalar> LieDecomposition<S> {
    pub fn is_lie(&self) -> bool {
        self.remainder.is_zero()
    }

    pub fn display(&self) -> String {
        crate::graded::format_terms(self.terms.iter().map(|(n, c)| (c.clone(), n.clone())))
    }
}

/// How a basis element of the free Lie algebra was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieDefinition {
    Letter(u32),
    /// `[letter, basis element]`
    Bracket(u32, usize),
}

#[derive(Debug, Clone)]
pub struct LieBasisElement<S: Scalar> {
    pub name: String,
    pub degree: i64,
    pub weight: u32,
    pub definition: LieDefinition,
    pub poly: NcPolynomial<S>,
}

#[derive(Debug, Clone)]
struct Row<S: Scalar> {
    poly: NcPolynomial<S>,
    combo: BTreeMap<usize, S>,
}

/// A basis of the truncated free Lie algebra inside the tensor algebra,
/// by right-normed brackets `[g, B]` kept when linearly independent.
#[derive(Debug, Clone)]
pub struct LieBasis<S: Scalar> {
    algebra: NcAlgebra,
    pub elements: Vec<LieBasisElement<S>>,
    rows: BTreeMap<Monomial, Row<S>>,
}

impl<S: Scalar> LieBasis<S> {
    pub fn build(algebra: NcAlgebra) -> Self {
        let mut basis = LieBasis {
            algebra,
            elements: Vec::new(),
            rows: BTreeMap::new(),
        };
        let alph = basis.algebra.alphabet.clone();
        for w in 1..=alph.weight_cap() {
            for g in 0..alph.len() as u32 {
                if alph.weight(g) == w {
                    let name = alph.generator(g).name.clone();
                    basis.try_add(name, LieDefinition::Letter(g), alph.gen(g));
                }
            }
            for g in 0..alph.len() as u32 {
                let lower: Vec<usize> = (0..basis.elements.len())
                    .filter(|&i| basis.elements[i].weight + alph.weight(g) == w)
                    .collect();
                for i in lower {
                    let poly = basis
                        .algebra
                        .commutator(&alph.gen(g), &basis.elements[i].poly);
                    let name = format!("[{},{}]", alph.generator(g).name, basis.elements[i].name);
                    basis.try_add(name, LieDefinition::Bracket(g, i), poly);
                }
            }
        }
        basis
    }

    pub fn algebra(&self) -> &NcAlgebra {
        &self.algebra
    }

    fn reduce(&self, p: &NcPolynomial<S>) -> (BTreeMap<usize, S>, NcPolynomial<S>) {
        let mut residual = p.clone();
        let mut combo: BTreeMap<usize, S> = BTreeMap::new();
        loop {
            let Some((lead, c)) = residual
                .terms()
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()))
            else {
                break;
            };
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let factor = c / row.poly.coefficient(&lead);
            residual.add_scaled(&row.poly, &-factor.clone());
            for (i, v) in &row.combo {
                let e = combo.entry(*i).or_insert_with(S::zero);
                *e = e.clone() + v.clone() * factor.clone();
            }
        }
        combo.retain(|_, v| !v.is_zero());
        (combo, residual)
    }

    fn try_add(&mut self, name: String, definition: LieDefinition, poly: NcPolynomial<S>) -> bool {
        if poly.is_zero() {
            return false;
        }
        let (combo, residual) = self.reduce(&poly);
        if residual.is_zero() {
            return false;
        }
        let k = self.elements.len();
        let degree = self
            .algebra
            .alphabet
            .element_degree(&poly)
            .ok()
            .flatten()
            .unwrap_or(0);
        let weight = poly
            .terms()
            .map(|(m, _)| self.algebra.alphabet.monomial_weight(m))
            .min()
            .unwrap_or(0);
        let mut row_combo: BTreeMap<usize, S> = combo.into_iter().map(|(i, c)| (i, -c)).collect();
        row_combo.insert(k, S::one());
        let lead = residual
            .terms()
            .next_back()
            .map(|(m, _)| m.clone())
            .expect("nonzero");
        self.rows.insert(
            lead,
            Row {
                poly: residual,
                combo: row_combo,
            },
        );
        self.elements.push(LieBasisElement {
            name,
            degree,
            weight,
            definition,
            poly,
        });
        true
    }

    /// Coordinates of `p` in the basis, plus whatever could not be reduced.
    pub fn express(&self, p: &NcPolynomial<S>) -> (Vec<(usize, S)>, NcPolynomial<S>) {
        let (combo, residual) = self.reduce(p);
        (combo.into_iter().collect(), residual)
    }

    /// Evaluates every basis element under the Lie morphism determined by
    /// `images` of the letters, using `bracket` for the target bracket.
    pub fn images<T: Clone>(
        &self,
        letters: &[T],
        mut bracket: impl FnMut(&T, &T) -> Result<T>,
    ) -> Result<Vec<T>> {
        let mut out: Vec<T> = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            let v = match e.definition {
                LieDefinition::Letter(g) => letters[g as usize].clone(),
                LieDefinition::Bracket(g, i) => bracket(&letters[g as usize], &out[i])?,
            };
            out.push(v);
        }
        Ok(out)
    }
}

/// A degree-0 element of `V`, viewed as a linear polynomial in the tensor
/// algebra on the generators of `spec`.
pub fn linear_nc<S: Scalar>(algebra: &NcAlgebra, x: &GradedElement<S>) -> Result<NcPolynomial<S>> {
    algebra.from_named_words(x.iter().map(|(n, c)| (vec![n.to_string()], c.clone())))
}

/// Element `c·1 + v` of the unitalisation `k ⊕ V`.
#[derive(Clone, Debug)]
struct Unital<S: Scalar> {
    scalar: S,
    vector: GradedElement<S>,
}

fn unital_mul<S: Scalar>(spec: &AlgebraSpec<S>, a: &Unital<S>, b: &Unital<S>) -> Result<Unital<S>> {
    let mut vector = b.vector.scaled(&a.scalar);
    vector.add_scaled(&a.vector, &b.scalar);
    if !a.vector.is_zero() && !b.vector.is_zero() {
        for (na, ca) in a.vector.iter() {
            for (nb, cb) in b.vector.iter() {
                let p = spec
                    .eval_bracket(&[GradedElement::generator(na), GradedElement::generator(nb)])?;
                vector.add_scaled(&p, &(ca.clone() * cb.clone()));
            }
        }
    }
    Ok(Unital {
        scalar: a.scalar.clone() * b.scalar.clone(),
        vector,
    })
}

fn evaluate_in_unital<S: Scalar>(
    spec: &AlgebraSpec<S>,
    algebra: &NcAlgebra,
    p: &NcPolynomial<S>,
) -> Result<Unital<S>> {
    let mut total = Unital {
        scalar: S::zero(),
        vector: GradedElement::zero(),
    };
    for (m, c) in p.terms() {
        let mut acc = Unital {
            scalar: c.clone(),
            vector: GradedElement::zero(),
        };
        for &g in m {
            let letter = Unital {
                scalar: S::zero(),
                vector: GradedElement::generator(algebra.alphabet.generator(g).name.clone()),
            };
            acc = unital_mul(spec, &acc, &letter)?;
        }
        total.scalar = total.scalar + acc.scalar;
        total.vector.add_scaled(&acc.vector, &S::one());
    }
    Ok(total)
}

/// `a · ξ = aξa^{-1} - (da)a^{-1}` in a dga, for `a` a polynomial in the
/// generators of `spec` with invertible constant term.
pub fn gauge_dga<S: Scalar>(
    spec: &AlgebraSpec<S>,
    a: &NcPolynomial<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    if spec.kind() != Kind::Dga {
        return Err(Error::Kind(format!(
            "the dga gauge formula needs kind dga, got {}",
            spec.kind()
        )));
    }
    require_mc(spec, xi)?;
    let algebra = NcAlgebra::for_spec(spec);
    if let Some(d) = algebra.alphabet.element_degree(a)? {
        if d != 0 {
            return Err(Error::Degree(format!(
                "gauge element has degree {d}, expected 0"
            )));
        }
    }
    let inverse = algebra.invert_unital(a)?;
    let a_val = evaluate_in_unital(spec, &algebra, a)?;
    let inv_val = evaluate_in_unital(spec, &algebra, &inverse)?;
    let xi_val = Unital {
        scalar: S::zero(),
        vector: xi.clone(),
    };
    let conj = unital_mul(spec, &unital_mul(spec, &a_val, &xi_val)?, &inv_val)?;
    let da = Unital {
        scalar: S::zero(),
        vector: if a_val.vector.is_zero() {
            GradedElement::zero()
        } else {
            spec.eval_bracket(std::slice::from_ref(&a_val.vector))?
        },
    };
    let correction = unital_mul(spec, &da, &inv_val)?;
    Ok(&conj.vector - &correction.vector)
}

/// The dgla on the same space with the graded commutator
/// `[a, b] = ab - (-1)^{|a||b|} ba`.
pub fn commutator_dgla<S: Scalar>(spec: &AlgebraSpec<S>) -> Result<AlgebraSpec<S>> {
    if spec.kind() != Kind::Dga {
        return Err(Error::Kind(format!(
            "commutator dgla needs kind dga, got {}",
            spec.kind()
        )));
    }
    let mut b = AlgebraSpec::builder(
        format!("{}-commutator", spec.name()),
        Kind::Dgla,
        spec.weight_cap(),
        2,
    );
    for g in spec.generators() {
        b.add_generator(g.clone());
    }
    for (key, value) in spec.ops() {
        if key.len() == 1 {
            b.add_op(vec![key[0].name.clone()], value.clone());
        }
    }
    let gens = spec.generators();
    for (i, p) in gens.iter().enumerate() {
        for q in &gens[i..] {
            let (ep, eq) = (
                GradedElement::generator(p.name.clone()),
                GradedElement::generator(q.name.clone()),
            );
            let pq = spec.eval_bracket(&[ep.clone(), eq.clone()])?;
            let qp = spec.eval_bracket(&[eq, ep])?;
            let sign = S::sign((p.degree * q.degree).rem_euclid(2) == 1);
            let mut v = pq;
            v.add_scaled(&qp, &-sign);
            if !v.is_zero() {
                b.add_op(vec![p.name.clone(), q.name.clone()], v);
            }
        }
    }
    b.build()
}
