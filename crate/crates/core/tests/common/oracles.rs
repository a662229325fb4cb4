//! Reference computations written independently of the gauge routes.

use std::collections::BTreeSet;

use mcgauge::gauge::{commutator_dgla, LieBasis, NcAlgebra};
use mcgauge::trees::RootedTree;
use mcgauge::{AlgebraSpec, GradedElement, Kind, Rational, Scalar};
use rand::Rng;

use super::q;

type El = GradedElement<Rational>;

/// A polynomial path `Σ_k c_k t^k`.
type Series = Vec<El>;

fn zero_series(len: usize) -> Series {
    vec![El::zero(); len]
}

/// `op(s_1(t), …, s_m(t))` for a multilinear `op`, truncated to `len`
/// powers of `t`.
fn multilinear(args: &[&Series], len: usize, op: &mut dyn FnMut(&[El]) -> El) -> Series {
    let mut out = zero_series(len);
    let mut idx = vec![0usize; args.len()];
    loop {
        let power: usize = idx.iter().sum();
        if power < len && idx.iter().zip(args).all(|(&i, a)| !a[i].is_zero()) {
            let picked: Vec<El> = idx.iter().zip(args).map(|(&i, a)| a[i].clone()).collect();
            out[power].add_scaled(&op(&picked), &q(1));
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < args[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if args.is_empty() {
            return out;
        }
    }
}

/// Solves `ξ'(t) = F(ξ(t))`, `ξ(0) = ξ₀` by Picard iteration on
/// polynomials and returns `ξ(1)`. Terminates because `F` raises weight.
fn integrate(
    spec: &AlgebraSpec<Rational>,
    xi: &El,
    field: &dyn Fn(&Series, usize) -> Series,
) -> El {
    let len = spec.weight_cap() as usize + 2;
    let mut current = zero_series(len);
    current[0] = xi.clone();
    for _ in 0..(2 * len + 2) {
        let f = field(&current, len);
        let mut next = zero_series(len);
        next[0] = xi.clone();
        for k in 0..len - 1 {
            next[k + 1] = f[k].scaled(&Rational::new(1.into(), ((k + 1) as i64).into()));
        }
        if next == current {
            break;
        }
        current = next;
    }
    let mut end = El::zero();
    for c in &current {
        end.add_scaled(c, &q(1));
    }
    end
}

/// Time-one flow of `ξ' = -Σ_n ℓ_{n+1}(ξ, …, ξ, x) / n!` in a dgla or L∞
/// algebra.
pub fn lie_flow(spec: &AlgebraSpec<Rational>, x: &El, xi: &El) -> El {
    let field = |path: &Series, len: usize| -> Series {
        let mut out = zero_series(len);
        let mut xs = zero_series(len);
        xs[0] = x.clone();
        for n in 0..spec.arity_cap() {
            let mut args: Vec<&Series> = vec![path; n];
            args.push(&xs);
            let term = multilinear(&args, len, &mut |a| spec.eval_bracket(a).unwrap());
            let c = -Rational::inv_factorial(n);
            for (o, t) in out.iter_mut().zip(&term) {
                o.add_scaled(t, &c);
            }
        }
        out
    };
    integrate(spec, xi, &field)
}

/// Time-one flow of `ξ' = -Σ_i Σ_p b_i(ξ, …, x, …, ξ)` in a dga or A∞
/// algebra, with `b_i` the suspended operations and `x` in slot `p`.
pub fn assoc_flow(spec: &AlgebraSpec<Rational>, x: &El, xi: &El) -> El {
    let field = |path: &Series, len: usize| -> Series {
        let mut out = zero_series(len);
        let mut xs = zero_series(len);
        xs[0] = x.clone();
        for i in 1..=spec.arity_cap() {
            for p in 0..i {
                let args: Vec<&Series> = (0..i).map(|k| if k == p { &xs } else { path }).collect();
                let term = multilinear(&args, len, &mut |a| spec.suspended_op(a).unwrap());
                for (o, t) in out.iter_mut().zip(&term) {
                    o.add_scaled(t, &q(-1));
                }
            }
        }
        out
    };
    integrate(spec, xi, &field)
}

pub fn flow(spec: &AlgebraSpec<Rational>, x: &El, xi: &El) -> El {
    if spec.kind().is_lie() {
        lie_flow(spec, x, xi)
    } else {
        assoc_flow(spec, x, xi)
    }
}

/// A small random rational, zero with some probability.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.2) {
        return q(0);
    }
    let n: i64 = rng.gen_range(-4..=4);
    let d: i64 = rng.gen_range(1..=3);
    Rational::new(n.into(), d.into())
}

/// A random element supported on the generators of degree `degree`.
pub fn random_element(spec: &AlgebraSpec<Rational>, degree: i64, rng: &mut impl Rng) -> El {
    let mut e = El::zero();
    for gen in spec.generators().iter().filter(|g| g.degree == degree) {
        e.add_term(gen.name.clone(), small_rational(rng));
    }
    e
}

/// A random Maurer–Cartan element, using the hand-derived locus of each
/// fixture with a curved equation.
pub fn random_mc(spec: &AlgebraSpec<Rational>, rng: &mut impl Rng) -> El {
    let alpha = small_rational(rng);
    let e = match spec.name() {
        "F2" => El::zero(),
        // αu + βv with β = -α²/2
        "F6" => {
            GradedElement::from_terms([("u", alpha.clone()), ("v", -alpha.clone() * alpha / q(2))])
        }
        // αu + βv with β = -α²
        "D4" => GradedElement::from_terms([("u", alpha.clone()), ("v", -alpha.clone() * alpha)]),
        _ => random_element(spec, 1, rng),
    };
    assert!(
        spec.is_mc(&e).unwrap(),
        "sampler produced a non-MC element on {}",
        spec.name()
    );
    e
}

/// `bch(x, y)` evaluated in a dgla (or the commutator dgla of a dga) by
/// mapping a bracket basis of the free Lie algebra.
pub fn bch_in(spec: &AlgebraSpec<Rational>, x: &El, y: &El) -> El {
    let lie = match spec.kind() {
        Kind::Dga => commutator_dgla(spec).unwrap(),
        _ => spec.clone(),
    };
    let alg = NcAlgebra::with_symbols(&["x", "y"], spec.weight_cap());
    let p = alg
        .bch(
            &alg.symbol::<Rational>("x").unwrap(),
            &alg.symbol("y").unwrap(),
        )
        .unwrap();
    let basis = LieBasis::<Rational>::build(alg);
    let (combo, rest) = basis.express(&p);
    assert!(rest.is_zero());
    let images = basis
        .images(&[x.clone(), y.clone()], |a, b| {
            lie.eval_bracket(&[a.clone(), b.clone()])
        })
        .unwrap();
    let mut out = El::zero();
    for (i, c) in combo {
        out.add_scaled(&images[i], &c);
    }
    out
}

/// Number of vertex orders in which parents precede children, by trying
/// every available vertex in turn.
pub fn linear_extensions(parents: &[Option<usize>]) -> u128 {
    fn go(parents: &[Option<usize>], placed: &mut Vec<bool>, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for v in 0..parents.len() {
            let ready = !placed[v] && parents[v].is_none_or(|p| placed[p]);
            if ready {
                placed[v] = true;
                total += go(parents, placed, left - 1);
                placed[v] = false;
            }
        }
        total
    }
    go(parents, &mut vec![false; parents.len()], parents.len())
}

/// Canonical string of the tree given by a parent array and ξ-counts.
pub fn canon(parents: &[Option<usize>], js: &[usize]) -> String {
    fn at(v: usize, parents: &[Option<usize>], js: &[usize]) -> String {
        let mut kids: Vec<String> = (0..parents.len())
            .filter(|&c| parents[c] == Some(v))
            .map(|c| at(c, parents, js))
            .collect();
        kids.sort();
        format!("({}j{})", kids.concat(), js[v])
    }
    at(0, parents, js)
}

pub fn canon_of(t: &RootedTree) -> String {
    canon(&t.parents(), &t.j_vector())
}

/// All trees with `n` vertices and arity at most `cap`, from increasing
/// parent arrays and every choice of ξ-counts, deduplicated.
pub fn generate_and_filter(n: usize, cap: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut parents = vec![None; n];
    fn parents_rec(
        i: usize,
        parents: &mut Vec<Option<usize>>,
        n: usize,
        cap: usize,
        out: &mut BTreeSet<String>,
    ) {
        if i == n {
            let mut js = vec![0; n];
            js_rec(0, parents, &mut js, cap, out);
            return;
        }
        for p in 0..i {
            parents[i] = Some(p);
            parents_rec(i + 1, parents, n, cap, out);
        }
    }
    fn js_rec(
        v: usize,
        parents: &[Option<usize>],
        js: &mut Vec<usize>,
        cap: usize,
        out: &mut BTreeSet<String>,
    ) {
        if v == parents.len() {
            let ok = (0..parents.len()).all(|u| {
                let kids = parents.iter().filter(|&&p| p == Some(u)).count();
                kids + js[u] < cap
            });
            if ok {
                out.insert(canon(parents, js));
            }
            return;
        }
        for j in 0..cap {
            js[v] = j;
            js_rec(v + 1, parents, js, cap, out);
        }
    }
    parents_rec(1, &mut parents, n, cap, &mut out);
    out
}
