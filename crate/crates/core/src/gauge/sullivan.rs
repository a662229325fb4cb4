//! Sullivan homotopies realising a gauge equivalence: the path
//! `t ↦ e^{tx} · ξ` completed by a constant `dt`-component.

use crate::error::Result;
use crate::graded::GradedElement;
use crate::scalar::Scalar;
use crate::structure::{AlgebraSpec, PolyPath};

use super::gauge_closed_series;

/// Sign of the `x·dt` component that makes the path Maurer–Cartan under the
/// coefficient conventions of [`AlgebraSpec::mc_defect_poly`].
pub const DT_SIGN: i64 = -1;

#[derive(Debug, Clone)]
pub struct SullivanWitness<S: Scalar> {
    pub path: PolyPath<S>,
    /// The sign `σ` with `dt`-part `σ·x`, or `None` if neither sign works.
    pub dt_sign: Option<i64>,
    /// Maurer–Cartan defect of `path`.
    pub defect: PolyPath<S>,
    pub start: GradedElement<S>,
    pub end: GradedElement<S>,
    /// `e^x · ξ` by the closed formula.
    pub expected_end: GradedElement<S>,
}

impl<S: Scalar> SullivanWitness<S> {
    pub fn verified(&self, xi: &GradedElement<S>) -> bool {
        self.dt_sign.is_some()
            && self.defect.is_zero()
            && &self.start == xi
            && self.end == self.expected_end
    }
}

/// Builds a polynomial path from `ξ` to `e^x · ξ` and checks it is
/// Maurer–Cartan in `V ⊗ k[t, dt]`.
pub fn sullivan_witness<S: Scalar>(
    spec: &AlgebraSpec<S>,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<SullivanWitness<S>> {
    let series = gauge_closed_series(spec, x, xi)?;
    let mut base = PolyPath::zero();
    let mut expected_end = GradedElement::zero();
    for (k, term) in series.iter().enumerate() {
        base.add_t(k as u32, term);
        expected_end.add_scaled(term, &S::one());
    }
    // the frozen sign first, then the other one as a fallback diagnostic
    let mut chosen = None;
    let mut path = base.clone();
    let mut defect = PolyPath::zero();
    for sign in [DT_SIGN, -DT_SIGN] {
        let mut candidate = base.clone();
        candidate.add_dt(0, &x.scaled(&S::from_int(sign)));
        let d = spec.mc_defect_poly(&candidate)?;
        let ok = d.is_zero();
        if chosen.is_none() && (ok || sign == DT_SIGN) {
            path = candidate;
            defect = d;
        }
        if ok {
            chosen = Some(sign);
            break;
        }
    }
    Ok(SullivanWitness {
        start: path.evaluate_at(&S::zero()),
        end: path.evaluate_at(&S::one()),
        path,
        dt_sign: chosen,
        defect,
        expected_end,
    })
}
