//! The gauge action in closed form, the tree-sum formulas, the associative
//! group law, the interval dgla and homotopy witnesses.

mod ls;
mod ncpoly;
mod sullivan;

pub use ls::{
    homotopy_witness_check, ls_interval, verify_ls, LsPresentation, LsReport, WitnessReport,
};
pub use ncpoly::{
    commutator_dgla, gauge_dga, linear_nc, LieBasis, LieBasisElement, LieDecomposition,
    LieDefinition, NcAlgebra, NcPolynomial,
};
pub use sullivan::{sullivan_witness, SullivanWitness, DT_SIGN};

use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::scalar::Scalar;
use crate::structure::{AlgebraSpec, Kind};
use crate::trees::{
    enumerate_planar, enumerate_trees, labellings, tree_word_a, tree_word_l, RootedTree,
};

pub(crate) fn require_mc<S: Scalar>(spec: &AlgebraSpec<S>, xi: &GradedElement<S>) -> Result<()> {
    let defect = spec.mc_defect(xi)?;
    if defect.is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "ξ is not Maurer–Cartan (defect {})",
            defect.display(spec)
        )))
    }
}

fn require_kind<S: Scalar>(spec: &AlgebraSpec<S>, allowed: &[Kind], what: &str) -> Result<()> {
    if allowed.contains(&spec.kind()) {
        Ok(())
    } else {
        Err(Error::Kind(format!(
            "{what} needs kind {}, got {}",
            allowed
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join(" or "),
            spec.kind()
        )))
    }
}

/// The summands of `e^x · ξ` by degree in `x`: entry `n ≥ 1` is
/// `ad_x^{n-1}([x,ξ] - dx) / n!`, entry 0 is `ξ`. Substituting `t·x`
/// multiplies entry `n` by `t^n`.
pub fn gauge_closed_series<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<Vec<GradedElement<S>>> {
    require_kind(spec, &[Kind::Dgla], "the closed gauge formula")?;
    x.require_degree(spec, 0)?;
    require_mc(spec, xi)?;
    let mut out = vec![xi.clone()];
    let dx = spec.eval_bracket(std::slice::from_ref(x))?;
    let mut term = &spec.eval_bracket(&[x.clone(), xi.clone()])? - &dx;
    let mut n = 1i64;
    while !term.is_zero() {
        out.push(term.clone());
        n += 1;
        if n as u32 > spec.weight_cap() + 1 {
            return Err(Error::Divergence {
                bound: spec.weight_cap() as usize + 1,
            });
        }
        term = spec
            .eval_bracket(&[x.clone(), term])?
            .scaled(&(S::one() / S::from_int(n)));
    }
    Ok(out)
}

/// `e^x · ξ = ξ + Σ_{n≥1} ad_x^{n-1}/n! (ad_x ξ - dx)` in a dgla.
pub fn gauge_closed<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    let mut sum = GradedElement::zero();
    for t in gauge_closed_series(spec, x, xi)? {
        sum.add_scaled(&t, &S::one());
    }
    Ok(sum)
}

/// `x * ξ = ξ + Σ_T (-1)^n r / (n! σ_T j_1! ⋯ j_n!) T(x, ξ)` over rooted
/// trees with at most `W` vertices, where `σ_T` counts permutations of
/// isomorphic sibling subtrees.
pub fn gauge_trees_l<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    tree_sum_l(spec, x, xi, RootedTree::coefficient)
}

/// The same sum with the coefficient `(-1)^n r / (n! j_1! ⋯ j_n!)`, which
/// lacks the sibling symmetry factor. It agrees with [`gauge_trees_l`] on
/// dglas and can differ once a vertex has two isomorphic children.
pub fn gauge_trees_l_unsym<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    tree_sum_l(spec, x, xi, RootedTree::unsym_coefficient)
}

fn tree_sum_l<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
    coefficient: fn(&RootedTree) -> S,
) -> Result<GradedElement<S>> {
    require_kind(spec, &[Kind::Dgla, Kind::Linf], "the rooted-tree formula")?;
    x.require_degree(spec, 0)?;
    require_mc(spec, xi)?;
    let mut sum = xi.clone();
    for tree in enumerate_trees(spec.weight_cap() as usize, spec.arity_cap())
        .iter()
        .flatten()
    {
        let word = tree_word_l(spec, tree, x, xi)?;
        if !word.is_zero() {
            sum.add_scaled(&word, &coefficient(tree));
        }
    }
    Ok(sum)
}

/// `x * ξ = ξ + Σ_T Σ_λ (-1)^n / n! T_λ(x, ξ)` over planar trees with at
/// most `W` vertices and their admissible labellings.
pub fn gauge_trees_a<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    require_kind(spec, &[Kind::Dga, Kind::Ainf], "the planar-tree formula")?;
    x.require_degree(spec, 0)?;
    require_mc(spec, xi)?;
    let mut sum = xi.clone();
    for (k, trees) in enumerate_planar(spec.weight_cap() as usize, spec.arity_cap())
        .iter()
        .enumerate()
    {
        let n = k + 1;
        let coeff = S::sign(n % 2 == 1) * S::inv_factorial(n);
        for tree in trees {
            for lab in labellings(tree, n) {
                let word = tree_word_a(spec, tree, &lab, x, xi)?;
                sum.add_scaled(&word, &coeff);
            }
        }
    }
    Ok(sum)
}

/// Planar tree sum in which every vertex carries exactly one `x`-leaf and
/// a tree counts with its number `r` of monotone vertex orderings:
/// `ξ + Σ_{T,λ} (-1)^n r / n! T_λ(x, ξ)`. This is the expansion of the
/// gauge flow; it coincides with [`gauge_trees_a`] when every vertex has
/// arity at most 2.
pub fn gauge_trees_a_monotone<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    require_kind(spec, &[Kind::Dga, Kind::Ainf], "the planar-tree formula")?;
    x.require_degree(spec, 0)?;
    require_mc(spec, xi)?;
    let mut sum = xi.clone();
    for (k, trees) in enumerate_planar(spec.weight_cap() as usize, spec.arity_cap())
        .iter()
        .enumerate()
    {
        let n = k + 1;
        for tree in trees {
            let r = S::from_u128(tree.monotone_count()).expect("count fits");
            let coeff = S::sign(n % 2 == 1) * S::inv_factorial(n) * r;
            for lab in labellings(tree, n) {
                if tree.x_leaves_per_vertex(&lab).iter().all(|&c| c == 1) {
                    let word = tree_word_a(spec, tree, &lab, x, xi)?;
                    sum.add_scaled(&word, &coeff);
                }
            }
        }
    }
    Ok(sum)
}

/// Bernoulli numbers with `z/(e^z - 1) = Σ B_n z^n / n!`, so `B_1 = -1/2`.
pub fn bernoulli<S: Scalar>(n: usize) -> S {
    bernoulli_table::<S>(n).pop().expect("table is nonempty")
}

/// `B_0, …, B_n` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_table<S: Scalar>(n: usize) -> Vec<S> {
    let mut b: Vec<S> = vec![S::one()];
    for m in 1..=n {
        let mut binom = S::one(); // C(m+1, 0)
        let mut acc = S::zero();
        for (k, bk) in b.iter().enumerate() {
            acc = acc + binom.clone() * bk.clone();
            binom = binom * S::from_int((m + 1 - k) as i64) / S::from_int(k as i64 + 1);
        }
        // binom is now C(m+1, m)
        b.push(-acc / binom);
    }
    b
}
