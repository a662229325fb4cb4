//! Free graded-commutative and free tensor algebras, derivations, the
//! representing algebra of an [`AlgebraSpec`], and the two gauge routes that
//! live in the Koszul dual picture: the exponential `e^{[x̃,d]}` and the
//! cylinder `C(SU)` / `C(TU)`.
//!
//! Conventions. The representing algebra is built on `U = (ΣV)^*`, one
//! generator `v*` of degree `1 - |v|` per basis vector `v`. Writing
//! `y = Σ_j se_j ⊗ e_j^*` for the universal degree-0 element of
//! `ΣV ⊗ U`, the differential is the unique derivation with
//! `(1 ⊗ m)(y) = -Σ_i c_i ℓ_i(y,…,y)`, where `ℓ_i` is the
//! suspended operation extended with Koszul signs and `c_i = 1/i!` in the
//! commutative flavor, `1` in the tensor flavor. A degree-1 element `ξ`
//! is then Maurer–Cartan exactly when the algebra map `e_k^* ↦ ξ_k`
//! commutes with the differentials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{format_terms, Generator, GradedElement};
use crate::scalar::Scalar;
use crate::structure::{suspension_sign, AlgebraSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Commutative,
    Tensor,
}

/// Letters of a monomial. Commutative monomials are kept sorted.
pub type Monomial = Vec<u32>;

/// Sign convention for pairing `x ∈ V^0` with the dual generators: the
/// constant derivation is `x̃(e_j^*) = X_PAIRING_SIGN · x_j`, and the
/// cylinder homotopy sends `bar(e_j^*)` to the same scalar.
pub const X_PAIRING_SIGN: i64 = 1;

/// An element of a free algebra: a finite sum of monomials.
#[derive(Clone, PartialEq)]
pub struct FreeElement<S: Scalar> {
    flavor: Flavor,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> FreeElement<S> {
    pub fn zero(flavor: Flavor) -> Self {
        FreeElement {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(flavor: Flavor, c: S) -> Self {
        let mut e = Self::zero(flavor);
        e.add_monomial(Vec::new(), c);
        e
    }

    pub fn one(flavor: Flavor) -> Self {
        Self::scalar(flavor, S::one())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> S {
        self.coefficient(&[])
    }

    /// Adds `c · m`. The monomial must already be in normal form.
    pub fn add_monomial(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElement<S>, factor: &S) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_monomial(m.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.flavor);
        out.add_scaled(self, factor);
        out
    }

    /// Component of the given polynomial length.
    pub fn homogeneous_part(&self, length: usize) -> Self {
        FreeElement {
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == length)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<S: Scalar> fmt::Debug for FreeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter().map(|(m, c)| {
            (
                c.clone(),
                m.iter()
                    .map(|g| format!("g{g}"))
                    .collect::<Vec<_>>()
                    .join("*"),
            )
        })))
    }
}

impl<S: Scalar> std::ops::Add for &FreeElement<S> {
    type Output = FreeElement<S>;
    fn add(self, rhs: Self) -> FreeElement<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<S: Scalar> std::ops::Sub for &FreeElement<S> {
    type Output = FreeElement<S>;
    fn sub(self, rhs: Self) -> FreeElement<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

/// The generating set of a free algebra together with its weight cap.
#[derive(Debug, Clone)]
pub struct Alphabet {
    flavor: Flavor,
    generators: Vec<Generator>,
    weight_cap: u32,
}

impl Alphabet {
    pub fn new(flavor: Flavor, generators: Vec<Generator>, weight_cap: u32) -> Self {
        Alphabet {
            flavor,
            generators,
            weight_cap,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn weight_cap(&self) -> u32 {
        self.weight_cap
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, g: u32) -> &Generator {
        &self.generators[g as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u32)
    }

    pub fn degree(&self, g: u32) -> i64 {
        self.generators[g as usize].degree
    }

    pub fn weight(&self, g: u32) -> u32 {
        self.generators[g as usize].weight
    }

    pub fn monomial_degree(&self, m: &[u32]) -> i64 {
        m.iter().map(|&g| self.degree(g)).sum()
    }

    pub fn monomial_weight(&self, m: &[u32]) -> u32 {
        m.iter().map(|&g| self.weight(g)).sum()
    }

    /// The element `1 · g`.
    pub fn gen<S: Scalar>(&self, g: u32) -> FreeElement<S> {
        let mut e = FreeElement::zero(self.flavor);
        if self.weight(g) <= self.weight_cap {
            e.add_monomial(vec![g], S::one());
        }
        e
    }

    pub fn one<S: Scalar>(&self) -> FreeElement<S> {
        FreeElement::one(self.flavor)
    }

    /// Builds an element from words in arbitrary letter order, normalising
    /// commutative monomials with their Koszul signs.
    pub fn from_words<S: Scalar>(
        &self,
        words: impl IntoIterator<Item = (Monomial, S)>,
    ) -> FreeElement<S> {
        let mut out = FreeElement::zero(self.flavor);
        for (w, c) in words {
            if let Some((sign, m)) = self.normalise(&w) {
                out.add_monomial(m, c * S::from_int(sign as i64));
            }
        }
        out
    }

    /// Normal form of a word: `None` when it vanishes (too heavy, or an odd
    /// letter repeated in the commutative flavor).
    fn normalise(&self, word: &[u32]) -> Option<(i8, Monomial)> {
        if self.monomial_weight(word) > self.weight_cap {
            return None;
        }
        match self.flavor {
            Flavor::Tensor => Some((1, word.to_vec())),
            Flavor::Commutative => {
                let mut m = word.to_vec();
                let mut odd = false;
                // insertion sort, tracking the Koszul sign of each swap
                for i in 1..m.len() {
                    let mut j = i;
                    while j > 0 && m[j - 1] > m[j] {
                        if (self.degree(m[j - 1]) * self.degree(m[j])).rem_euclid(2) == 1 {
                            odd = !odd;
                        }
                        m.swap(j - 1, j);
                        j -= 1;
                    }
                }
                for w in m.windows(2) {
                    if w[0] == w[1] && self.degree(w[0]).rem_euclid(2) == 1 {
                        return None;
                    }
                }
                Some((if odd { -1 } else { 1 }, m))
            }
        }
    }

    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(i8, Monomial)> {
        if self.monomial_weight(a) + self.monomial_weight(b) > self.weight_cap {
            return None;
        }
        match self.flavor {
            Flavor::Tensor => {
                let mut m = a.to_vec();
                m.extend_from_slice(b);
                Some((1, m))
            }
            Flavor::Commutative => {
                let mut odd = false;
                let mut m = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                // merge; each letter of b that jumps ahead of the remaining
                // letters of a picks up their degree
                let mut rest_a: i64 = self.monomial_degree(a);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i] <= b[j]) {
                        rest_a -= self.degree(a[i]);
                        m.push(a[i]);
                        i += 1;
                    } else {
                        if (rest_a * self.degree(b[j])).rem_euclid(2) == 1 {
                            odd = !odd;
                        }
                        m.push(b[j]);
                        j += 1;
                    }
                }
                for w in m.windows(2) {
                    if w[0] == w[1] && self.degree(w[0]).rem_euclid(2) == 1 {
                        return None;
                    }
                }
                Some((if odd { -1 } else { 1 }, m))
            }
        }
    }

    pub fn mul<S: Scalar>(&self, a: &FreeElement<S>, b: &FreeElement<S>) -> FreeElement<S> {
        let mut out = FreeElement::zero(self.flavor);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((sign, m)) = self.mul_monomials(ma, mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_monomial(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Multiplies a monomial into an element on the left and right:
    /// `left · e · right`.
    fn sandwich<S: Scalar>(
        &self,
        left: &[u32],
        e: &FreeElement<S>,
        right: &[u32],
        c: &S,
    ) -> FreeElement<S> {
        let mut out = FreeElement::zero(self.flavor);
        for (m, cm) in &e.terms {
            let Some((s1, lm)) = self.mul_monomials(left, m) else {
                continue;
            };
            let Some((s2, full)) = self.mul_monomials(&lm, right) else {
                continue;
            };
            let v = cm.clone() * c.clone();
            out.add_monomial(full, if s1 * s2 < 0 { -v } else { v });
        }
        out
    }

    /// Degree of a homogeneous element (`None` for zero).
    pub fn element_degree<S: Scalar>(&self, e: &FreeElement<S>) -> Result<Option<i64>> {
        let mut d = None;
        for m in e.terms.keys() {
            let dm = self.monomial_degree(m);
            match d {
                None => d = Some(dm),
                Some(x) if x != dm => {
                    return Err(Error::Degree(
                        "free algebra element is not homogeneous".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(d)
    }

    /// Graded Leibniz extension of `d` applied to `e`.
    pub fn apply_derivation<S: Scalar>(
        &self,
        d: &DerivationTable<S>,
        e: &FreeElement<S>,
    ) -> Result<FreeElement<S>> {
        if d.flavor != self.flavor || e.flavor != self.flavor {
            return Err(Error::InvalidInput(
                "derivation, element and algebra must share a flavor".into(),
            ));
        }
        let mut out = FreeElement::zero(self.flavor);
        for (m, c) in &e.terms {
            let mut passed: i64 = 0;
            for p in 0..m.len() {
                let value = &d.values[m[p] as usize];
                if !value.is_zero() {
                    let negative = (d.degree * passed).rem_euclid(2) == 1;
                    let coeff = if negative { -c.clone() } else { c.clone() };
                    let piece = self.sandwich(&m[..p], value, &m[p + 1..], &coeff);
                    out.add_scaled(&piece, &S::one());
                }
                passed += self.degree(m[p]);
            }
        }
        Ok(out)
    }

    /// Applies an algebra map given by its values on generators.
    pub fn apply_algebra_map<S: Scalar>(
        &self,
        images: &[FreeElement<S>],
        target: &Alphabet,
        e: &FreeElement<S>,
    ) -> FreeElement<S> {
        let mut out = FreeElement::zero(target.flavor);
        for (m, c) in &e.terms {
            let mut acc = FreeElement::scalar(target.flavor, c.clone());
            for &g in m {
                acc = target.mul(&acc, &images[g as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &S::one());
        }
        out
    }

    /// Evaluates `e` under the algebra map to `k` sending generator `g` to
    /// `values[g]`. Only degree-0 generators may have nonzero values, so no
    /// signs arise.
    pub fn evaluate<S: Scalar>(&self, values: &[S], e: &FreeElement<S>) -> S {
        let mut total = S::zero();
        for (m, c) in &e.terms {
            let mut v = c.clone();
            for &g in m {
                v = v * values[g as usize].clone();
                if v.is_zero() {
                    break;
                }
            }
            total = total + v;
        }
        total
    }

    pub fn display<S: Scalar>(&self, e: &FreeElement<S>) -> String {
        let mut terms: Vec<(&Monomial, &S)> = e.terms.iter().collect();
        terms.sort_by(|a, b| {
            (self.monomial_weight(a.0), a.0.len(), a.0).cmp(&(
                self.monomial_weight(b.0),
                b.0.len(),
                b.0,
            ))
        });
        format_terms(terms.into_iter().map(|(m, c)| {
            (
                c.clone(),
                m.iter()
                    .map(|&g| self.generator(g).name.clone())
                    .collect::<Vec<_>>()
                    .join("*"),
            )
        }))
    }
}

/// A derivation given by its values on generators.
#[derive(Clone, Debug)]
pub struct DerivationTable<S: Scalar> {
    flavor: Flavor,
    degree: i64,
    values: Vec<FreeElement<S>>,
}

impl<S: Scalar> DerivationTable<S> {
    pub fn zero(alphabet: &Alphabet, degree: i64) -> Self {
        DerivationTable {
            flavor: alphabet.flavor,
            degree,
            values: vec![FreeElement::zero(alphabet.flavor); alphabet.len()],
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn set(&mut self, g: u32, value: FreeElement<S>) {
        self.values[g as usize] = value;
    }

    pub fn value(&self, g: usize) -> FreeElement<S> {
        self.values[g].clone()
    }

    pub fn values(&self) -> &[FreeElement<S>] {
        &self.values
    }
}

/// The representing (c)dga `(S U, m)` or `(T U, m)` of an algebra spec.
/// Generator `i` of the alphabet is the dual of spec generator `i`.
#[derive(Clone, Debug)]
pub struct RepresentingAlgebra<S: Scalar> {
    alphabet: Alphabet,
    differential: DerivationTable<S>,
}

impl<S: Scalar> RepresentingAlgebra<S> {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn differential(&self) -> &DerivationTable<S> {
        &self.differential
    }

    /// Evaluation of the representing map of `ξ`: `v* ↦ ξ_v` on degree-0
    /// generators (duals of degree-1 vectors), zero elsewhere.
    pub fn point_values(&self, spec: &AlgebraSpec<S>, xi: &GradedElement<S>) -> Vec<S> {
        spec.generators()
            .iter()
            .map(|g| {
                if g.degree == 1 {
                    xi.coefficient(&g.name)
                } else {
                    S::zero()
                }
            })
            .collect()
    }
}

/// Next lexicographic permutation; `false` after the last one. On a sorted
/// multiset this visits each distinct ordering once.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Builds the representing algebra of `spec`: commutative for dgla/L∞,
/// tensor for dga/A∞.
pub fn build_representing<S: Scalar>(spec: &AlgebraSpec<S>) -> RepresentingAlgebra<S> {
    let flavor = if spec.kind().is_lie() {
        Flavor::Commutative
    } else {
        Flavor::Tensor
    };
    let duals: Vec<Generator> = spec
        .generators()
        .iter()
        .map(|g| Generator::new(format!("{}*", g.name), 1 - g.degree, g.weight))
        .collect();
    let alphabet = Alphabet::new(flavor, duals, spec.weight_cap());
    let mut differential = DerivationTable::zero(&alphabet, 1);
    let mut acc: Vec<FreeElement<S>> = vec![FreeElement::zero(flavor); alphabet.len()];

    let gens = spec.generators();
    for (key, _) in spec.raw_ops() {
        let arity = key.len();
        let factor = match flavor {
            Flavor::Commutative => S::inv_factorial(arity),
            Flavor::Tensor => S::one(),
        };
        let mut tuple = key.clone();
        loop {
            if let Some((sign, value)) = spec.table_value(&tuple) {
                let suspended: Vec<i64> = tuple.iter().map(|&i| gens[i].degree - 1).collect();
                let mut odd = sign < 0;
                if suspension_sign(&suspended) < 0 {
                    odd = !odd;
                }
                // moving the dual letters to the right of the suspended
                // arguments: a_p passes se_q for p < q
                for p in 0..arity {
                    let dp = 1 - gens[tuple[p]].degree;
                    for sq in &suspended[p + 1..] {
                        if (dp * sq).rem_euclid(2) == 1 {
                            odd = !odd;
                        }
                    }
                }
                // m = -Q
                odd = !odd;
                let word: Vec<u32> = tuple.iter().map(|&i| i as u32).collect();
                let product = alphabet.from_words([(word, factor.clone() * S::sign(odd))]);
                if !product.is_zero() {
                    for (name, c) in value.iter() {
                        let k = spec.generator_index(name).expect("validated spec");
                        // (1⊗m)(se_k⊗φ_k) = (-1)^{|se_k|} se_k⊗m(φ_k)
                        let c = if (gens[k].degree - 1).rem_euclid(2) == 1 {
                            -c.clone()
                        } else {
                            c.clone()
                        };
                        acc[k].add_scaled(&product, &c);
                    }
                }
            }
            if flavor == Flavor::Tensor || !next_permutation(&mut tuple) {
                break;
            }
        }
    }
    for (k, v) in acc.into_iter().enumerate() {
        differential.set(k as u32, v);
    }
    RepresentingAlgebra {
        alphabet,
        differential,
    }
}

/// The constant derivation `x̃` of degree -1 induced by `x ∈ V^0`.
pub fn constant_derivation<S: Scalar>(
    spec: &AlgebraSpec<S>,
    rep: &RepresentingAlgebra<S>,
    x: &GradedElement<S>,
) -> Result<DerivationTable<S>> {
    x.require_degree(spec, 0)?;
    let mut t = DerivationTable::zero(&rep.alphabet, -1);
    for (j, g) in spec.generators().iter().enumerate() {
        if g.degree == 0 {
            let c = x.coefficient(&g.name);
            if !c.is_zero() {
                t.set(
                    j as u32,
                    FreeElement::scalar(rep.alphabet.flavor, c * S::from_int(X_PAIRING_SIGN)),
                );
            }
        }
    }
    Ok(t)
}

/// Sums `Σ_n θ^n(g)/n!` for a degree-0 derivation given as a closure,
/// raising [`Error::Divergence`] if the series has not died out after
/// `bound` applications.
fn exp_series<S: Scalar>(
    start: FreeElement<S>,
    bound: usize,
    mut step: impl FnMut(&FreeElement<S>) -> Result<FreeElement<S>>,
) -> Result<FreeElement<S>> {
    let mut sum = start.clone();
    let mut term = start;
    for n in 1..=bound {
        term = step(&term)?.scaled(&(S::one() / S::from_int(n as i64)));
        if term.is_zero() {
            return Ok(sum);
        }
        sum.add_scaled(&term, &S::one());
    }
    if step(&term)?.is_zero() {
        Ok(sum)
    } else {
        Err(Error::Divergence { bound })
    }
}

/// The automorphism `e^{[x̃, m]}` of the representing algebra, returned by
/// its values on the generators.
pub fn exp_bracket_derivation<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
) -> Result<Vec<FreeElement<S>>> {
    let rep = build_representing(spec);
    exp_bracket_with(spec, &rep, x)
}

fn exp_bracket_with<S: Scalar>(
    spec: &AlgebraSpec<S>,
    rep: &RepresentingAlgebra<S>,
    x: &GradedElement<S>,
) -> Result<Vec<FreeElement<S>>> {
    let xt = constant_derivation(spec, rep, x)?;
    let alph = &rep.alphabet;
    let m = &rep.differential;
    // [x̃, m] = x̃m + mx̃ for two odd derivations; each application removes
    // at least one unit of weight through x̃
    let bound = spec.weight_cap() as usize + 1;
    (0..alph.len())
        .map(|g| {
            exp_series(alph.gen(g as u32), bound, |e| {
                let a = alph.apply_derivation(&xt, &alph.apply_derivation(m, e)?)?;
                let b = alph.apply_derivation(m, &alph.apply_derivation(&xt, e)?)?;
                Ok(&a + &b)
            })
        })
        .collect()
}

fn require_mc<S: Scalar>(spec: &AlgebraSpec<S>, xi: &GradedElement<S>) -> Result<()> {
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

fn element_from_values<S: Scalar>(spec: &AlgebraSpec<S>, values: Vec<S>) -> GradedElement<S> {
    GradedElement::from_terms(
        spec.generators()
            .iter()
            .zip(values)
            .map(|(g, c)| (g.name.clone(), c)),
    )
}

/// `x * ξ` as the Maurer–Cartan element represented by `ξ ∘ e^{[x̃, m]}`.
pub fn gauge_via_exp<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    x.require_degree(spec, 0)?;
    require_mc(spec, xi)?;
    let rep = build_representing(spec);
    let auto = exp_bracket_with(spec, &rep, x)?;
    let point = rep.point_values(spec, xi);
    let values = spec
        .generators()
        .iter()
        .zip(&auto)
        .map(|(g, image)| {
            if g.degree == 1 {
                rep.alphabet.evaluate(&point, image)
            } else {
                S::zero()
            }
        })
        .collect();
    Ok(element_from_values(spec, values))
}

/// The cylinder `C(SU)` (or `C(TU)`): generators `u`, `bar(u)`, `hat(u)`
/// with `D(u) = m(u)`, `D(bar u) = hat u`, `D(hat u) = 0`, the degree -1
/// derivation `s(u) = bar u`, and `θ = sD + Ds`.
#[derive(Clone, Debug)]
pub struct Cylinder<S: Scalar> {
    pub algebra: RepresentingAlgebra<S>,
    pub s: DerivationTable<S>,
    pub theta: DerivationTable<S>,
    base_len: usize,
}

impl<S: Scalar> Cylinder<S> {
    pub fn plain(&self, g: usize) -> u32 {
        g as u32
    }

    pub fn bar(&self, g: usize) -> u32 {
        (self.base_len + g) as u32
    }

    pub fn hat(&self, g: usize) -> u32 {
        (2 * self.base_len + g) as u32
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }
}

pub fn build_cylinder<S: Scalar>(rep: &RepresentingAlgebra<S>) -> Cylinder<S> {
    let n = rep.alphabet.len();
    let base = rep.alphabet.generators();
    let mut gens: Vec<Generator> = base.to_vec();
    gens.extend(
        base.iter()
            .map(|g| Generator::new(format!("bar({})", g.name), g.degree - 1, g.weight)),
    );
    gens.extend(
        base.iter()
            .map(|g| Generator::new(format!("hat({})", g.name), g.degree, g.weight)),
    );
    let alphabet = Alphabet::new(rep.alphabet.flavor, gens, rep.alphabet.weight_cap);
    let mut d = DerivationTable::zero(&alphabet, 1);
    let mut s = DerivationTable::zero(&alphabet, -1);
    for g in 0..n {
        // base generator indices are unchanged, so m(u) embeds verbatim
        let mut mu = FreeElement::zero(alphabet.flavor);
        mu.add_scaled(&rep.differential.values[g], &S::one());
        d.set(g as u32, mu);
        d.set((n + g) as u32, alphabet.gen((2 * n + g) as u32));
        s.set(g as u32, alphabet.gen((n + g) as u32));
    }
    let mut theta = DerivationTable::zero(&alphabet, 0);
    for g in 0..3 * n {
        let gen = alphabet.gen(g as u32);
        let sd = alphabet
            .apply_derivation(&s, &alphabet.apply_derivation(&d, &gen).unwrap())
            .unwrap();
        let ds = alphabet
            .apply_derivation(&d, &alphabet.apply_derivation(&s, &gen).unwrap())
            .unwrap();
        theta.set(g as u32, &sd + &ds);
    }
    Cylinder {
        algebra: RepresentingAlgebra {
            alphabet,
            differential: d,
        },
        s,
        theta,
        base_len: n,
    }
}

/// `x * ξ = H_{ξ,x} ∘ e^θ ∘ i`, where `H_{ξ,x}` sends `u ↦ ξ(u)`,
/// `bar u ↦ x(bar u)` and `hat u ↦ 0`.
pub fn cylinder_gauge<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    x.require_degree(spec, 0)?;
    require_mc(spec, xi)?;
    let rep = build_representing(spec);
    let cyl = build_cylinder(&rep);
    let alph = &cyl.algebra.alphabet;
    let n = cyl.base_len;
    let mut h = vec![S::zero(); 3 * n];
    for (j, g) in spec.generators().iter().enumerate() {
        match g.degree {
            1 => h[j] = xi.coefficient(&g.name),
            0 => h[n + j] = x.coefficient(&g.name) * S::from_int(X_PAIRING_SIGN),
            _ => {}
        }
    }
    // every application of sD either bars a letter or trades weight for
    // letters, so 2W + 1 steps always suffice
    let bound = 2 * spec.weight_cap() as usize + 1;
    let mut values = Vec::with_capacity(n);
    for (j, g) in spec.generators().iter().enumerate() {
        if g.degree != 1 {
            values.push(S::zero());
            continue;
        }
        let image = exp_series(alph.gen(j as u32), bound, |e| {
            alph.apply_derivation(&cyl.theta, e)
        })?;
        values.push(alph.evaluate(&h, &image));
    }
    Ok(element_from_values(spec, values))
}

/// The canonical projection `T U → S U` onto the commutative quotient.
pub fn project_to_commutative<S: Scalar>(
    tensor: &Alphabet,
    commutative: &Alphabet,
    e: &FreeElement<S>,
) -> FreeElement<S> {
    debug_assert_eq!(tensor.flavor, Flavor::Tensor);
    commutative.from_words(e.terms().map(|(m, c)| (m.clone(), c.clone())))
}
