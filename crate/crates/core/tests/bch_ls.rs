//! BCH, the group law, the interval dgla, homotopy witnesses and Sullivan
//! paths.

mod common;

use common::oracles::{bch_in, random_element, random_mc, small_rational};
use common::*;
use mcgauge::gauge::{homotopy_witness_check, verify_ls, LieBasis, NcAlgebra};
use mcgauge::{gauge_closed, sullivan_witness, FreeElement, GradedElement, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Matrix = Vec<Vec<Rational>>;

fn zero(n: usize) -> Matrix {
    vec![vec![q(0); n]; n]
}

fn identity(n: usize) -> Matrix {
    let mut m = zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = q(1);
    }
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = zero(n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i][j] = c[i][j].clone() + a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    c
}

fn axpy(a: &Matrix, s: &Rational, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, t)| {
            r.iter()
                .zip(t)
                .map(|(x, y)| x.clone() + s.clone() * y.clone())
                .collect()
        })
        .collect()
}

/// `Σ_k c_k m^k` for nilpotent `m` of size `n` (so `m^n = 0`).
fn series(m: &Matrix, c: impl Fn(usize) -> Rational) -> Matrix {
    let n = m.len();
    let mut out = axpy(&zero(n), &c(0), &identity(n));
    let mut p = identity(n);
    for k in 1..n {
        p = mat_mul(&p, m);
        out = axpy(&out, &c(k), &p);
    }
    out
}

fn mat_exp(m: &Matrix) -> Matrix {
    series(m, |k| frac(1, (1..=k as i64).product()))
}

fn mat_log(m: &Matrix) -> Matrix {
    let u = axpy(m, &q(-1), &identity(m.len()));
    series(&u, |k| {
        if k == 0 {
            q(0)
        } else {
            frac(if k % 2 == 1 { 1 } else { -1 }, k as i64)
        }
    })
}

fn random_strict_upper(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        for entry in &mut row[i + 1..] {
            *entry = small_rational(rng);
        }
    }
    m
}

#[test]
fn bch_matches_matrix_logarithm() {
    // 5×5 strictly upper triangular matrices: words of length 5 vanish,
    // so the weight-4 truncation is exact
    let alg = NcAlgebra::with_symbols(&["x", "y"], 4);
    let p = alg
        .bch(
            &alg.symbol::<Rational>("x").unwrap(),
            &alg.symbol("y").unwrap(),
        )
        .unwrap();
    let basis = LieBasis::<Rational>::build(alg);
    let (combo, rest) = basis.express(&p);
    assert!(rest.is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let x = random_strict_upper(5, &mut rng);
        let y = random_strict_upper(5, &mut rng);
        let images = basis
            .images(&[x.clone(), y.clone()], |a, b| {
                Ok(axpy(&mat_mul(a, b), &q(-1), &mat_mul(b, a)))
            })
            .unwrap();
        let mut value = zero(5);
        for (i, c) in &combo {
            value = axpy(&value, c, &images[*i]);
        }
        let oracle = mat_log(&mat_mul(&mat_exp(&x), &mat_exp(&y)));
        assert_eq!(value, oracle);
    }
}

#[test]
fn bch_coefficients_to_weight_four() {
    let alg = NcAlgebra::with_symbols(&["x", "y"], 4);
    let p = alg
        .bch(
            &alg.symbol::<Rational>("x").unwrap(),
            &alg.symbol("y").unwrap(),
        )
        .unwrap();
    let dec = alg.lie_decomposition(&p);
    assert!(dec.is_lie());
    assert_eq!(
        dec.display(),
        "x + y + 1/2 [x,y] + 1/12 [x,[x,y]] - 1/12 [y,[x,y]] - 1/24 [x,[y,[x,y]]]"
    );
}

fn random_poly(alg: &NcAlgebra, rng: &mut impl Rng) -> FreeElement<Rational> {
    let names = ["x", "y", "z"];
    let mut words = Vec::new();
    for _ in 0..4 {
        let len = rng.gen_range(1..=3);
        let w: Vec<String> = (0..len)
            .map(|_| names[rng.gen_range(0..3)].to_string())
            .collect();
        words.push((w, small_rational(rng)));
    }
    alg.from_named_words(words).unwrap()
}

#[test]
fn log_exp_round_trip() {
    let alg = NcAlgebra::with_symbols(&["x", "y", "z"], 4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let p = random_poly(&alg, &mut rng);
        assert_eq!(alg.log_assoc(&alg.exp_assoc(&p).unwrap()).unwrap(), p);
        let unit = &alg.one() + &p;
        assert_eq!(alg.exp_assoc(&alg.log_assoc(&unit).unwrap()).unwrap(), unit);
    }
}

#[test]
fn group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    for s in dgla_fixtures().into_iter().filter(|s| s.weight_cap() <= 4) {
        for _ in 0..3 {
            let x = random_element(&s, 0, &mut rng);
            let y = random_element(&s, 0, &mut rng);
            let xi = random_mc(&s, &mut rng);
            let lhs = gauge_closed(&s, &x, &gauge_closed(&s, &y, &xi).unwrap()).unwrap();
            let rhs = gauge_closed(&s, &bch_in(&s, &x, &y), &xi).unwrap();
            assert_eq!(lhs, rhs, "{}", s.name());
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn interval_through_weight_five() {
    for w in 1..=5 {
        let r = verify_ls::<Rational>(w).unwrap();
        assert!(r.passed(), "W={w}: {r:?}");
        assert_eq!(r.weight, w);
    }
}

#[test]
fn homotopy_witness_examples() {
    let s = f1();
    let u = g("u");
    let uv = el(&[("u", 1), ("v", 1)]);
    assert!(homotopy_witness_check(&s, &uv, &u, &g("x"))
        .unwrap()
        .passed());
    let back = homotopy_witness_check(&s, &u, &uv, &g("x")).unwrap();
    assert!(!back.passed());
    assert!(back.failures.iter().all(|(_, r)| !r.is_zero()));
    assert!(homotopy_witness_check(&d1(), &g("E23e"), &g("E23e"), &GradedElement::zero()).is_err());
}

#[test]
fn homotopy_witness_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for s in dgla_fixtures().into_iter().filter(|s| s.weight_cap() <= 4) {
        let x = random_element(&s, 0, &mut rng);
        let eta = random_mc(&s, &mut rng);
        let xi = gauge_closed(&s, &x, &eta).unwrap();
        assert!(
            homotopy_witness_check(&s, &xi, &eta, &x).unwrap().passed(),
            "{}",
            s.name()
        );
    }
}

#[test]
fn sullivan_paths() {
    let s = f1();
    let w = sullivan_witness(&s, &g("x"), &g("u")).unwrap();
    assert!(w.verified(&g("u")));
    assert_eq!(w.path.display(&s), "(u) + (v) t + (-x) dt");
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for s in dgla_fixtures() {
        for _ in 0..3 {
            let x = random_element(&s, 0, &mut rng);
            let xi = random_mc(&s, &mut rng);
            let w = sullivan_witness(&s, &x, &xi).unwrap();
            assert!(w.verified(&xi), "{}", s.name());
            assert_eq!(w.end, gauge_closed(&s, &x, &xi).unwrap());
        }
    }
}
