//! Graded generators, sparse linear combinations and Koszul signs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A basis element of a graded vector space: cohomological degree plus a
/// positive weight for the nilpotency filtration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64, weight: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight,
        }
    }

    /// Canonical order: weight, then degree, then name.
    pub fn canonical_cmp(&self, other: &Generator) -> Ordering {
        (self.weight, self.degree, &self.name).cmp(&(other.weight, other.degree, &other.name))
    }

    /// The generator of `Σ^shift V` corresponding to this one. Since
    /// `(ΣV)^i = V^{i+1}`, the degree drops by `shift`.
    pub fn suspended(&self, shift: i64) -> Generator {
        let (base, prior) = split_suspension(&self.name);
        let total = prior + shift;
        let name = match total {
            0 => base.to_string(),
            1 => format!("Σ{base}"),
            -1 => format!("Σ⁻¹{base}"),
            k => format!("Σ^{{{k}}}{base}"),
        };
        Generator::new(name, self.degree - shift, self.weight)
    }
}

fn split_suspension(name: &str) -> (&str, i64) {
    if let Some(rest) = name.strip_prefix("Σ⁻¹") {
        return (rest, -1);
    }
    if let Some(rest) = name.strip_prefix("Σ^{") {
        if let Some(close) = rest.find('}') {
            if let Ok(k) = rest[..close].parse::<i64>() {
                return (&rest[close + 1..], k);
            }
        }
    }
    if let Some(rest) = name.strip_prefix('Σ') {
        return (rest, 1);
    }
    (name, 0)
}

/// Anything that can resolve a generator name.
pub trait GeneratorLookup {
    fn lookup(&self, name: &str) -> Option<&Generator>;
}

impl GeneratorLookup for [Generator] {
    fn lookup(&self, name: &str) -> Option<&Generator> {
        self.iter().find(|g| g.name == name)
    }
}

impl GeneratorLookup for Vec<Generator> {
    fn lookup(&self, name: &str) -> Option<&Generator> {
        self.as_slice().lookup(name)
    }
}

/// A finite linear combination of named generators.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// elements.
#[derive(Clone, PartialEq)]
pub struct GradedElement<S: Scalar> {
    terms: BTreeMap<String, S>,
}

impl<S: Scalar> Default for GradedElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GradedElement<S> {
    pub fn zero() -> Self {
        GradedElement {
            terms: BTreeMap::new(),
        }
    }

    /// The element `1 · name`.
    pub fn generator(name: impl Into<String>) -> Self {
        Self::term(S::one(), name)
    }

    pub fn term(coefficient: S, name: impl Into<String>) -> Self {
        let mut e = Self::zero();
        e.add_term(name.into(), coefficient);
        e
    }

    /// Builds an element from raw `(name, coefficient)` pairs, merging
    /// repeated names and dropping zeros.
    pub fn from_terms<I, N>(terms: I) -> Self
    where
        I: IntoIterator<Item = (N, S)>,
        N: Into<String>,
    {
        let mut e = Self::zero();
        for (n, c) in terms {
            e.add_term(n.into(), c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, name: &str) -> S {
        self.terms.get(name).cloned().unwrap_or_else(S::zero)
    }

    /// Terms in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &S)> {
        self.terms.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn add_term(&mut self, name: String, coefficient: S) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.get_mut(&name) {
            Some(c) => {
                *c = c.clone() + coefficient;
                if c.is_zero() {
                    self.terms.remove(&name);
                }
            }
            None => {
                self.terms.insert(name, coefficient);
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &GradedElement<S>, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for (n, c) in &other.terms {
            self.add_term(n.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        GradedElement {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Degree of a homogeneous element; `Ok(None)` for zero.
    pub fn degree<L: GeneratorLookup + ?Sized>(&self, basis: &L) -> Result<Option<i64>> {
        let mut degree = None;
        for name in self.terms.keys() {
            let g = basis
                .lookup(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            match degree {
                None => degree = Some(g.degree),
                Some(d) if d != g.degree => {
                    return Err(Error::Degree(format!(
                        "element is not homogeneous (degrees {d} and {})",
                        g.degree
                    )))
                }
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Checks that the element is zero or homogeneous of degree `expected`.
    pub fn require_degree<L: GeneratorLookup + ?Sized>(
        &self,
        basis: &L,
        expected: i64,
    ) -> Result<()> {
        match self.degree(basis)? {
            Some(d) if d != expected => Err(Error::Degree(format!(
                "expected an element of degree {expected}, found degree {d}"
            ))),
            _ => Ok(()),
        }
    }

    /// Smallest weight among the generators in the support.
    pub fn min_weight<L: GeneratorLookup + ?Sized>(&self, basis: &L) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|n| basis.lookup(n).map(|g| g.weight))
            .min()
    }

    /// Terms sorted by the canonical generator order of `basis`.
    pub fn sorted_terms<'a, L: GeneratorLookup + ?Sized>(
        &'a self,
        basis: &'a L,
    ) -> Vec<(&'a str, &'a S)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| match (basis.lookup(a.0), basis.lookup(b.0)) {
            (Some(ga), Some(gb)) => ga.canonical_cmp(gb),
            _ => a.0.cmp(b.0),
        });
        v
    }

    /// Prints the element with terms in canonical order.
    pub fn display<'a, L: GeneratorLookup + ?Sized>(&'a self, basis: &'a L) -> String {
        format_terms(
            self.sorted_terms(basis)
                .into_iter()
                .map(|(n, c)| (c.clone(), n.to_string())),
        )
    }
}

/// Drops zero coefficients. Elements are kept canonical by every mutating
/// method, so this only matters for elements assembled from raw maps.
pub fn canonicalize<S: Scalar>(terms: BTreeMap<String, S>) -> GradedElement<S> {
    GradedElement::from_terms(terms)
}

/// Moves `e` to the shifted copy of its basis. Returns the element together
/// with the shifted generators it is written in.
pub fn suspend<S: Scalar, L: GeneratorLookup + ?Sized>(
    e: &GradedElement<S>,
    basis: &L,
    shift: i64,
) -> Result<(GradedElement<S>, Vec<Generator>)> {
    e.degree(basis)?;
    let mut gens = Vec::with_capacity(e.len());
    let mut out = GradedElement::zero();
    for (name, c) in e.iter() {
        let g = basis
            .lookup(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?
            .suspended(shift);
        out.add_term(g.name.clone(), c.clone());
        gens.push(g);
    }
    Ok((out, gens))
}

impl<S: Scalar> fmt::Debug for GradedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(
            self.iter().map(|(n, c)| (c.clone(), n.to_string())),
        ))
    }
}

impl<S: Scalar> fmt::Display for GradedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<S: Scalar> std::ops::Add for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn add(self, rhs: Self) -> GradedElement<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<S: Scalar> std::ops::Sub for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn sub(self, rhs: Self) -> GradedElement<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<S: Scalar> std::ops::Neg for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn neg(self) -> GradedElement<S> {
        self.scaled(&-S::one())
    }
}

/// Shared term printer: `a - 1/2 b + c`, `0` for the empty sum. A word with
/// an empty label prints as its bare coefficient.
pub(crate) fn format_terms<S: Scalar>(terms: impl Iterator<Item = (S, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if label.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{magnitude} {label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Validates `perm` as a permutation of `0..n`.
fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidInput(format!(
                "{perm:?} is not a permutation"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Koszul sign of reordering items with the given degrees.
///
/// `perm[p]` is the original index of the item that ends up in position `p`.
/// Every pair that changes relative order contributes
/// `(-1)^{deg_i · deg_j}`. Returns `+1` or `-1`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<i8> {
    if perm.len() != degrees.len() {
        return Err(Error::InvalidInput(format!(
            "permutation of length {} with {} degrees",
            perm.len(),
            degrees.len()
        )));
    }
    check_permutation(perm)?;
    Ok(koszul_sign_unchecked(perm, degrees, false))
}

/// Koszul sign times the sign of the permutation: the reordering sign of a
/// graded antisymmetric operation.
pub fn antisymmetric_sign(perm: &[usize], degrees: &[i64]) -> Result<i8> {
    if perm.len() != degrees.len() {
        return Err(Error::InvalidInput(format!(
            "permutation of length {} with {} degrees",
            perm.len(),
            degrees.len()
        )));
    }
    check_permutation(perm)?;
    Ok(koszul_sign_unchecked(perm, degrees, true))
}

pub(crate) fn koszul_sign_unchecked(perm: &[usize], degrees: &[i64], antisymmetric: bool) -> i8 {
    let mut odd = false;
    for p in 0..perm.len() {
        for q in p + 1..perm.len() {
            if perm[p] > perm[q] {
                let d = degrees[perm[p]] * degrees[perm[q]];
                if d.rem_euclid(2) == 1 {
                    odd = !odd;
                }
                if antisymmetric {
                    odd = !odd;
                }
            }
        }
    }
    if odd {
        -1
    } else {
        1
    }
}
