//! Finite presentations of dglas, dgas, L∞- and A∞-algebras.
//!
//! An [`AlgebraSpec`] lists generators and a table of operations. For the
//! Lie-type kinds (dgla, L∞) the table is keyed by canonically sorted
//! multisets and the graded antisymmetry sign is applied at evaluation
//! time; for the associative kinds (dga, A∞) keys are ordered tuples.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{self, FreeElement};
use crate::graded::{koszul_sign_unchecked, Generator, GeneratorLookup, GradedElement};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Dgla,
    Dga,
    Linf,
    Ainf,
}

impl Kind {
    /// Lie-type kinds store graded antisymmetric operations.
    pub fn is_lie(self) -> bool {
        matches!(self, Kind::Dgla | Kind::Linf)
    }

    /// dgla and dga only allow arities 1 and 2.
    pub fn is_strict(self) -> bool {
        matches!(self, Kind::Dgla | Kind::Dga)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Dgla => "dgla",
            Kind::Dga => "dga",
            Kind::Linf => "linf",
            Kind::Ainf => "ainf",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "dgla" => Ok(Kind::Dgla),
            "dga" => Ok(Kind::Dga),
            "linf" => Ok(Kind::Linf),
            "ainf" => Ok(Kind::Ainf),
            other => Err(Error::InvalidInput(format!(
                "unknown algebra kind `{other}`"
            ))),
        }
    }
}

/// Factorials in the A∞ Maurer–Cartan equation.
///
/// `Plain` is `Σ m_i(ξ,…,ξ) = 0`, the equation whose solutions are the dga
/// maps out of the representing tensor algebra. `Factorial` inserts `1/i!` as in
/// the L∞ equation. Lie-type kinds always use `1/i!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum McConvention {
    Factorial,
    #[default]
    Plain,
}

impl McConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            McConvention::Factorial => "factorial",
            McConvention::Plain => "plain",
        }
    }
}

/// A finite presentation of a weight-nilpotent algebra.
#[derive(Debug, Clone)]
pub struct AlgebraSpec<S: Scalar> {
    name: String,
    kind: Kind,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    weight_cap: u32,
    arity_cap: usize,
    ops: HashMap<Vec<usize>, GradedElement<S>>,
    mc_convention: McConvention,
}

impl<S: Scalar> GeneratorLookup for AlgebraSpec<S> {
    fn lookup(&self, name: &str) -> Option<&Generator> {
        self.index.get(name).map(|&i| &self.generators[i])
    }
}

/// Collects generators and table entries; [`SpecBuilder::build`] checks
/// every invariant.
#[derive(Debug, Clone)]
pub struct SpecBuilder<S: Scalar> {
    name: String,
    kind: Kind,
    weight_cap: u32,
    arity_cap: usize,
    generators: Vec<Generator>,
    ops: Vec<(Vec<String>, GradedElement<S>)>,
    mc_convention: McConvention,
}

impl<S: Scalar> SpecBuilder<S> {
    pub fn generator(mut self, name: impl Into<String>, degree: i64, weight: u32) -> Self {
        self.generators.push(Generator::new(name, degree, weight));
        self
    }

    pub fn add_generator(&mut self, g: Generator) {
        self.generators.push(g);
    }

    /// Adds a table entry. For Lie-type kinds the key must be sorted in the
    /// canonical generator order.
    pub fn op<N: AsRef<str>>(mut self, key: &[N], value: GradedElement<S>) -> Self {
        self.add_op(key.iter().map(|k| k.as_ref().to_string()).collect(), value);
        self
    }

    pub fn add_op(&mut self, key: Vec<String>, value: GradedElement<S>) {
        self.ops.push((key, value));
    }

    pub fn convention(mut self, c: McConvention) -> Self {
        self.mc_convention = c;
        self
    }

    pub fn set_convention(&mut self, c: McConvention) {
        self.mc_convention = c;
    }

    pub fn build(self) -> Result<AlgebraSpec<S>> {
        if self.weight_cap == 0 {
            return Err(Error::InvalidInput("weight cap must be positive".into()));
        }
        if self.arity_cap == 0 {
            return Err(Error::InvalidInput("arity cap must be positive".into()));
        }
        let mut generators = self.generators;
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::InvalidInput(format!(
                    "generator `{}` declared twice",
                    g.name
                )));
            }
            if g.weight == 0 {
                return Err(Error::Weight(format!(
                    "generator `{}` has weight 0",
                    g.name
                )));
            }
            if g.weight > self.weight_cap {
                return Err(Error::Weight(format!(
                    "generator `{}` has weight {} above the cap {}",
                    g.name, g.weight, self.weight_cap
                )));
            }
        }
        generators.sort_by(|a, b| a.canonical_cmp(b));
        let index: HashMap<String, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i))
            .collect();

        let mut ops = HashMap::new();
        for (key, value) in self.ops {
            let label = format!("op {} [{}]", key.len(), key.join(","));
            let arity = key.len();
            if arity == 0 {
                return Err(Error::InvalidInput(format!("{label}: empty key")));
            }
            if self.kind.is_strict() && arity > 2 {
                return Err(Error::Kind(format!(
                    "{label}: a {} only has operations of arity 1 and 2",
                    self.kind
                )));
            }
            if arity > self.arity_cap {
                return Err(Error::UnsupportedArity {
                    arity,
                    cap: self.arity_cap,
                });
            }
            let mut idx = Vec::with_capacity(arity);
            for k in &key {
                idx.push(
                    *index
                        .get(k)
                        .ok_or_else(|| Error::UnknownGenerator(k.clone()))?,
                );
            }
            if self.kind.is_lie() && idx.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidInput(format!(
                    "{label}: key must list generators in canonical order (weight, degree, name)"
                )));
            }
            for name in value.iter().map(|(n, _)| n) {
                if !index.contains_key(name) {
                    return Err(Error::UnknownGenerator(name.to_string()));
                }
            }
            let in_degree: i64 = idx.iter().map(|&i| generators[i].degree).sum();
            let expected = in_degree + 2 - arity as i64;
            let out_degree = value
                .degree(generators.as_slice())
                .map_err(|_| Error::Degree(format!("{label}: value is not homogeneous")))?;
            if let Some(d) = out_degree {
                if d != expected {
                    return Err(Error::Degree(format!(
                        "{label}: expected output degree {expected}, found {d}"
                    )));
                }
            }
            let in_weight: u32 = idx.iter().map(|&i| generators[i].weight).sum();
            for (name, _) in value.iter() {
                let w = generators[index[name]].weight;
                if w < in_weight {
                    return Err(Error::Weight(format!(
                        "{label}: output term `{name}` has weight {w}, below the input weight {in_weight}"
                    )));
                }
            }
            if self.kind.is_lie() && !value.is_zero() {
                for w in idx.windows(2) {
                    if w[0] == w[1] && generators[w[0]].degree.rem_euclid(2) == 0 {
                        return Err(Error::InvalidInput(format!(
                            "{label}: graded antisymmetry forces a repeated even generator to bracket to zero"
                        )));
                    }
                }
            }
            if ops.contains_key(&idx) {
                return Err(Error::InvalidInput(format!(
                    "{label}: duplicate table entry"
                )));
            }
            if !value.is_zero() {
                ops.insert(idx, value);
            }
        }
        Ok(AlgebraSpec {
            name: self.name,
            kind: self.kind,
            generators,
            index,
            weight_cap: self.weight_cap,
            arity_cap: self.arity_cap,
            ops,
            mc_convention: self.mc_convention,
        })
    }
}

impl<S: Scalar> AlgebraSpec<S> {
    pub fn builder(
        name: impl Into<String>,
        kind: Kind,
        weight_cap: u32,
        arity_cap: usize,
    ) -> SpecBuilder<S> {
        SpecBuilder {
            name: name.into(),
            kind,
            weight_cap,
            arity_cap,
            generators: Vec::new(),
            ops: Vec::new(),
            mc_convention: McConvention::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn weight_cap(&self) -> u32 {
        self.weight_cap
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn mc_convention(&self) -> McConvention {
        self.mc_convention
    }

    /// Generators in canonical order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Table entries in canonical order of their keys.
    pub fn ops(&self) -> Vec<(Vec<&Generator>, &GradedElement<S>)> {
        let mut keys: Vec<&Vec<usize>> = self.ops.keys().collect();
        keys.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
        keys.into_iter()
            .map(|k| {
                (
                    k.iter().map(|&i| &self.generators[i]).collect(),
                    &self.ops[k],
                )
            })
            .collect()
    }

    pub(crate) fn raw_ops(&self) -> impl Iterator<Item = (&Vec<usize>, &GradedElement<S>)> {
        self.ops.iter()
    }

    /// Same presentation under a different A∞ factorial convention.
    pub fn with_convention(&self, c: McConvention) -> Self {
        let mut s = self.clone();
        s.mc_convention = c;
        s
    }

    /// `1/i!` for Lie-type kinds, and for A∞ kinds under the `factorial`
    /// convention; `1` otherwise.
    pub fn mc_coefficient(&self, i: usize) -> S {
        if self.kind.is_lie() || self.mc_convention == McConvention::Factorial {
            S::inv_factorial(i)
        } else {
            S::one()
        }
    }

    fn resolve(&self, e: &GradedElement<S>) -> Result<Vec<(usize, S)>> {
        e.iter()
            .map(|(n, c)| {
                self.generator_index(n)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
            })
            .collect()
    }

    /// Table value on a tuple of generator indices, with the graded
    /// antisymmetry sign applied for Lie-type kinds. `None` means zero.
    pub(crate) fn table_value(&self, idx: &[usize]) -> Option<(i8, &GradedElement<S>)> {
        let w: u32 = idx.iter().map(|&i| self.generators[i].weight).sum();
        if w > self.weight_cap {
            return None;
        }
        if self.kind.is_lie() {
            let mut perm: Vec<usize> = (0..idx.len()).collect();
            perm.sort_by_key(|&p| idx[p]);
            let sorted: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            let value = self.ops.get(&sorted)?;
            let degrees: Vec<i64> = idx.iter().map(|&i| self.generators[i].degree).collect();
            Some((koszul_sign_unchecked(&perm, &degrees, true), value))
        } else {
            self.ops.get(idx).map(|v| (1, v))
        }
    }

    /// Multilinear evaluation without homogeneity or arity checks.
    pub(crate) fn bracket_unchecked(&self, args: &[&GradedElement<S>]) -> Result<GradedElement<S>> {
        let mut out = GradedElement::zero();
        if args.iter().any(|a| a.is_zero()) {
            return Ok(out);
        }
        let resolved: Vec<Vec<(usize, S)>> = args
            .iter()
            .map(|a| self.resolve(a))
            .collect::<Result<_>>()?;
        let mut idx = vec![0usize; args.len()];
        self.expand(&resolved, 0, &mut idx, S::one(), 0, &mut out);
        Ok(out)
    }

    fn expand(
        &self,
        resolved: &[Vec<(usize, S)>],
        pos: usize,
        idx: &mut Vec<usize>,
        coeff: S,
        weight: u32,
        out: &mut GradedElement<S>,
    ) {
        if weight > self.weight_cap {
            return;
        }
        if pos == resolved.len() {
            if let Some((sign, value)) = self.table_value(idx) {
                out.add_scaled(value, &(coeff * S::from_int(sign as i64)));
            }
            return;
        }
        for (g, c) in &resolved[pos] {
            idx[pos] = *g;
            let w = weight + self.generators[*g].weight;
            self.expand(resolved, pos + 1, idx, coeff.clone() * c.clone(), w, out);
        }
    }

    fn check_args(&self, args: &[GradedElement<S>]) -> Result<Vec<Option<i64>>> {
        let i = args.len();
        if i == 0 || i > self.arity_cap {
            return Err(Error::UnsupportedArity {
                arity: i,
                cap: self.arity_cap,
            });
        }
        args.iter().map(|a| a.degree(self)).collect()
    }

    /// `[args]_i`, extended multilinearly from the table.
    pub fn eval_bracket(&self, args: &[GradedElement<S>]) -> Result<GradedElement<S>> {
        self.check_args(args)?;
        let refs: Vec<&GradedElement<S>> = args.iter().collect();
        self.bracket_unchecked(&refs)
    }

    /// The operation on the suspension: `ℓ_i(sx_1,…,sx_i) =
    /// (-1)^{Σ_j (i-j)|sx_j|} s[x_1,…,x_i]`, where `|sx_j| = |x_j| - 1`.
    /// Arguments and result are written in the basis of `V`; the basis of
    /// `ΣV` is identified with it.
    pub fn suspended_op(&self, args: &[GradedElement<S>]) -> Result<GradedElement<S>> {
        let degrees = self.check_args(args)?;
        if degrees.iter().any(Option::is_none) {
            return Ok(GradedElement::zero());
        }
        let refs: Vec<&GradedElement<S>> = args.iter().collect();
        let suspended: Vec<i64> = degrees.into_iter().map(|d| d.unwrap() - 1).collect();
        let value = self.bracket_unchecked(&refs)?;
        Ok(value.scaled(&S::from_int(suspension_sign(&suspended) as i64)))
    }

    /// Left-hand side of the Maurer–Cartan equation,
    /// `Σ_{i≥1} c_i [ξ,…,ξ]_i` with `c_i` from [`Self::mc_coefficient`];
    /// the arity-1 term is the differential.
    pub fn mc_defect(&self, xi: &GradedElement<S>) -> Result<GradedElement<S>> {
        xi.require_degree(self, 1)?;
        let mut out = GradedElement::zero();
        let Some(w) = xi.min_weight(self) else {
            return Ok(out);
        };
        for i in 1..=self.arity_cap {
            if w as usize * i > self.weight_cap as usize {
                break;
            }
            let args = vec![xi; i];
            let b = self.bracket_unchecked(&args)?;
            out.add_scaled(&b, &self.mc_coefficient(i));
        }
        Ok(out)
    }

    pub fn is_mc(&self, xi: &GradedElement<S>) -> Result<bool> {
        Ok(self.mc_defect(xi)?.is_zero())
    }

    /// Maurer–Cartan defect of a path in `V ⊗ k[t, dt]`.
    ///
    /// Elements are written `w ⊗ a` with the coefficient on the right. The
    /// coefficient differential acts as `w ⊗ t^k ↦ (-1)^{|w|} k w ⊗ t^{k-1}dt`
    /// and brackets extend by
    /// `[w_1⊗a_1,…] = (-1)^{Σ_{p<q}|a_p||w_q|} [w_1,…] ⊗ a_1⋯a_i`.
    pub fn mc_defect_poly(&self, h: &PolyPath<S>) -> Result<PolyPath<S>> {
        let mut comps: Vec<(&GradedElement<S>, u32, bool, i64)> = Vec::new();
        for (k, w) in &h.t_part {
            w.require_degree(self, 1)?;
            if !w.is_zero() {
                comps.push((w, *k, false, 1));
            }
        }
        for (k, w) in &h.dt_part {
            w.require_degree(self, 0)?;
            if !w.is_zero() {
                comps.push((w, *k, true, 0));
            }
        }
        let mut out = PolyPath::zero();
        for (w, k, has_dt, degree) in &comps {
            if !*has_dt && *k > 0 {
                let c = S::from_int(*k as i64) * S::sign(degree.rem_euclid(2) == 1);
                out.add_dt(*k - 1, &w.scaled(&c));
            }
        }
        let min_weight = comps.iter().filter_map(|(w, ..)| w.min_weight(self)).min();
        let Some(min_weight) = min_weight else {
            return Ok(out);
        };
        for i in 1..=self.arity_cap {
            if min_weight as usize * i > self.weight_cap as usize {
                break;
            }
            let coeff = self.mc_coefficient(i);
            let mut choice = vec![0usize; i];
            loop {
                let dts = choice.iter().filter(|&&c| comps[c].2).count();
                if dts <= 1 {
                    let mut odd = false;
                    for p in 0..i {
                        for q in p + 1..i {
                            if comps[choice[p]].2 && comps[choice[q]].3.rem_euclid(2) == 1 {
                                odd = !odd;
                            }
                        }
                    }
                    let args: Vec<&GradedElement<S>> = choice.iter().map(|&c| comps[c].0).collect();
                    let b = self.bracket_unchecked(&args)?;
                    if !b.is_zero() {
                        let power: u32 = choice.iter().map(|&c| comps[c].1).sum();
                        let b = b.scaled(&(coeff.clone() * S::sign(odd)));
                        if dts == 1 {
                            out.add_dt(power, &b);
                        } else {
                            out.add_t(power, &b);
                        }
                    }
                }
                // next tuple
                let mut p = 0;
                while p < i {
                    choice[p] += 1;
                    if choice[p] < comps.len() {
                        break;
                    }
                    choice[p] = 0;
                    p += 1;
                }
                if p == i {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Builds the representing algebra and checks `m(m(g)) = 0` on every
    /// generator.
    pub fn validate_structure(&self) -> ValidationReport<S> {
        let rep = freealg::build_representing(self);
        let mut failures = Vec::new();
        for g in 0..rep.alphabet().len() {
            let once = rep.differential().value(g);
            let twice = rep
                .alphabet()
                .apply_derivation(rep.differential(), &once)
                .expect("flavors agree");
            if !twice.is_zero() {
                failures.push(ValidationFailure {
                    generator: self.generators[g].name.clone(),
                    weight: self.generators[g].weight,
                    residue: rep.alphabet().display(&twice),
                    residue_element: twice,
                });
            }
        }
        ValidationReport { failures }
    }
}

/// `(-1)^{Σ_{j=1}^{i-1} (i-j) d_j}` for suspended degrees `d_j`.
pub(crate) fn suspension_sign(suspended_degrees: &[i64]) -> i8 {
    let i = suspended_degrees.len() as i64;
    let e: i64 = suspended_degrees
        .iter()
        .enumerate()
        .map(|(j, d)| (i - 1 - j as i64) * d)
        .sum();
    if e.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// One generator whose representing differential does not square to zero.
#[derive(Debug, Clone)]
pub struct ValidationFailure<S: Scalar> {
    /// Name of the generator of `V` whose dual carries the nonzero residue.
    pub generator: String,
    pub weight: u32,
    pub residue: String,
    pub residue_element: FreeElement<S>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport<S: Scalar> {
    pub failures: Vec<ValidationFailure<S>>,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// An element of `V ⊗ k[t, dt]`: `Σ_k t^k·p_k + Σ_k t^k dt·q_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyPath<S: Scalar> {
    pub t_part: BTreeMap<u32, GradedElement<S>>,
    pub dt_part: BTreeMap<u32, GradedElement<S>>,
}

impl<S: Scalar> Default for PolyPath<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> PolyPath<S> {
    pub fn zero() -> Self {
        PolyPath {
            t_part: BTreeMap::new(),
            dt_part: BTreeMap::new(),
        }
    }

    /// The constant path at `e`.
    pub fn constant(e: GradedElement<S>) -> Self {
        let mut p = Self::zero();
        p.add_t(0, &e);
        p
    }

    fn add_into(map: &mut BTreeMap<u32, GradedElement<S>>, k: u32, e: &GradedElement<S>) {
        let slot = map.entry(k).or_default();
        slot.add_scaled(e, &S::one());
        if slot.is_zero() {
            map.remove(&k);
        }
    }

    pub fn add_t(&mut self, k: u32, e: &GradedElement<S>) {
        Self::add_into(&mut self.t_part, k, e);
    }

    pub fn add_dt(&mut self, k: u32, e: &GradedElement<S>) {
        Self::add_into(&mut self.dt_part, k, e);
    }

    pub fn is_zero(&self) -> bool {
        self.t_part.is_empty() && self.dt_part.is_empty()
    }

    /// Specialises `t ↦ value`, `dt ↦ 0`.
    pub fn evaluate_at(&self, value: &S) -> GradedElement<S> {
        let mut out = GradedElement::zero();
        for (k, e) in &self.t_part {
            let mut p = S::one();
            for _ in 0..*k {
                p = p * value.clone();
            }
            out.add_scaled(e, &p);
        }
        out
    }

    /// Text such as `(u) + (v) t + (-x) dt`.
    pub fn display<L: GeneratorLookup + ?Sized>(&self, basis: &L) -> String {
        let mut parts = Vec::new();
        for (k, e) in self.t_part.iter().filter(|(_, e)| !e.is_zero()) {
            parts.push(format!("({}){}", e.display(basis), t_power(*k)));
        }
        for (k, e) in self.dt_part.iter().filter(|(_, e)| !e.is_zero()) {
            parts.push(format!("({}){} dt", e.display(basis), t_power(*k)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn t_power(k: u32) -> String {
    match k {
        0 => String::new(),
        1 => " t".into(),
        k => format!(" t^{k}"),
    }
}
