//! Fixture algebras shared by the integration tests.

#![allow(dead_code)]

pub mod oracles;

use mcgauge::{AlgebraSpec, GradedElement, Kind, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn g(name: &str) -> GradedElement<Rational> {
    GradedElement::generator(name)
}

pub fn el(terms: &[(&str, i64)]) -> GradedElement<Rational> {
    GradedElement::from_terms(terms.iter().map(|(n, c)| (*n, q(*c))))
}

/// `[x,u] = v`.
pub fn f1() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("F1", Kind::Dgla, 2, 2)
        .generator("x", 0, 1)
        .generator("u", 1, 1)
        .generator("v", 1, 2)
        .op(&["x", "u"], g("v"))
        .build()
        .unwrap()
}

/// `[u,u] = 2c`.
pub fn f2() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("F2", Kind::Dgla, 2, 2)
        .generator("u", 1, 1)
        .generator("c", 2, 2)
        .op(&["u", "u"], el(&[("c", 2)]))
        .build()
        .unwrap()
}

/// Only a differential: `dx = u`, `dy = v`.
pub fn abelian() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("abelian", Kind::Dgla, 2, 2)
        .generator("x", 0, 1)
        .generator("y", 0, 2)
        .generator("u", 1, 1)
        .generator("v", 1, 2)
        .op(&["x"], g("u"))
        .op(&["y"], g("v"))
        .build()
        .unwrap()
}

/// A filiform-type dgla with differential.
pub fn f3() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("F3", Kind::Dgla, 3, 2)
        .generator("X", 0, 1)
        .generator("Y1e", 1, 1)
        .generator("Y2f", 0, 2)
        .generator("Y2e", 1, 2)
        .generator("Y3f", 0, 3)
        .generator("Y3e", 1, 3)
        .op(&["Y2f"], g("Y2e"))
        .op(&["Y3f"], g("Y3e"))
        .op(&["X", "Y1e"], g("Y2e"))
        .op(&["X", "Y2f"], g("Y3f"))
        .op(&["X", "Y2e"], g("Y3e"))
        .build()
        .unwrap()
}

/// A chain `[X, Yk] = Y(k+1)` of length five with `dX = Y1`.
pub fn f5() -> AlgebraSpec<Rational> {
    let mut b = AlgebraSpec::builder("F5", Kind::Dgla, 5, 2).generator("X", 0, 1);
    for k in 1..=5 {
        b = b.generator(format!("Y{k}"), 1, k);
    }
    b = b.op(&["X"], g("Y1"));
    for k in 1..=4 {
        b = b.op(
            &["X".to_string(), format!("Y{k}")],
            g(&format!("Y{}", k + 1)),
        );
    }
    b.build().unwrap()
}

/// Curved Maurer–Cartan locus: `αu + βv` is MC iff `β = -α²/2`.
pub fn f6() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("F6", Kind::Dgla, 2, 2)
        .generator("x", 0, 1)
        .generator("u", 1, 1)
        .generator("v", 1, 2)
        .generator("c", 2, 2)
        .op(&["x"], g("u"))
        .op(&["v"], el(&[("c", 2)]))
        .op(&["x", "u"], g("v"))
        .op(&["u", "u"], el(&[("c", 2)]))
        .build()
        .unwrap()
}

/// Upper triangular 3×3 matrices with a differential on the (2,3) entry.
pub fn d1() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("D1", Kind::Dga, 2, 2)
        .generator("E12", 0, 1)
        .generator("E23f", 0, 1)
        .generator("E23e", 1, 1)
        .generator("E13f", 0, 2)
        .generator("E13e", 1, 2)
        .op(&["E12", "E23f"], g("E13f"))
        .op(&["E12", "E23e"], g("E13e"))
        .op(&["E23f"], g("E23e"))
        .op(&["E13f"], g("E13e"))
        .build()
        .unwrap()
}

/// Two products sharing the middle entry.
pub fn d3() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("D3", Kind::Dga, 2, 2)
        .generator("E12", 0, 1)
        .generator("E34", 0, 1)
        .generator("E23e", 1, 1)
        .generator("E13e", 1, 2)
        .generator("E24e", 1, 2)
        .op(&["E12", "E23e"], g("E13e"))
        .op(&["E23e", "E34"], g("E24e"))
        .build()
        .unwrap()
}

/// A dga with curved Maurer–Cartan locus: `αu + βv` is MC iff `β = -α²`.
pub fn d4() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("D4", Kind::Dga, 2, 2)
        .generator("x", 0, 1)
        .generator("u", 1, 1)
        .generator("v", 1, 2)
        .generator("c", 2, 2)
        .op(&["x"], g("u"))
        .op(&["v"], g("c"))
        .op(&["x", "u"], g("v"))
        .op(&["u", "x"], el(&[("v", -1)]))
        .op(&["u", "u"], g("c"))
        .build()
        .unwrap()
}

/// An L∞ algebra with a ternary bracket `[x,y,y] = v` and `dx = y`.
pub fn l1() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("L1", Kind::Linf, 3, 3)
        .generator("x", 0, 1)
        .generator("y", 1, 1)
        .generator("v", 1, 3)
        .op(&["x"], g("y"))
        .op(&["x", "y", "y"], g("v"))
        .build()
        .unwrap()
}

/// An A∞ algebra with a ternary product and `dx = y`; the signs of `m3`
/// are the only ones compatible with the structure equations.
pub fn a1() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("A1", Kind::Ainf, 3, 3)
        .generator("x", 0, 1)
        .generator("y", 1, 1)
        .generator("w", 1, 3)
        .op(&["x"], g("y"))
        .op(&["y", "y", "x"], g("w"))
        .op(&["y", "x", "y"], el(&[("w", -1)]))
        .op(&["x", "y", "y"], g("w"))
        .build()
        .unwrap()
}

/// `du = v`, `dv = w`: the differential does not square to zero.
pub fn corrupted() -> AlgebraSpec<Rational> {
    AlgebraSpec::builder("corrupted", Kind::Dgla, 3, 2)
        .generator("u", 0, 1)
        .generator("v", 1, 1)
        .generator("w", 2, 1)
        .op(&["u"], g("v"))
        .op(&["v"], g("w"))
        .build()
        .unwrap()
}

pub fn dgla_fixtures() -> Vec<AlgebraSpec<Rational>> {
    vec![f1(), f2(), abelian(), f3(), f5(), f6()]
}

pub fn dga_fixtures() -> Vec<AlgebraSpec<Rational>> {
    vec![d1(), d3(), d4()]
}
