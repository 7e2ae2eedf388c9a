//! Gauge fixing as exact linear algebra over a bounded-degree monomial
//! ansatz: the strong condition solves L_Gamma f = -i(Gamma) alpha, the weak
//! one L_Gamma^2 f = -i(Gamma) d i(Gamma) alpha, so that alpha + df satisfies
//! del_Gamma(alpha + df) = 0.
//!
//! Infeasibility within the ansatz proves nothing about smooth solutions and
//! is reported as `InfeasibleAtBound`.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::exterior::DiffForm;
use crate::gen::monomials_up_to;
use crate::linalg::{self, LinearSolution};
use crate::poly::{Monomial, Rational, ScalarPoly};
use crate::twisted::TwistedContext;

/// Which gauge condition was solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeCondition {
    Strong,
    Weak,
}

/// Solver outcome. `InfeasibleAtBound` only rules out polynomials of the
/// stated degree, never smooth solutions.
#[derive(Debug, Clone, PartialEq)]
pub enum GaugeStatus {
    Solved(ScalarPoly),
    InfeasibleAtBound(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeResult {
    pub status: GaugeStatus,
    pub condition: GaugeCondition,
}

impl GaugeResult {
    pub fn solution(&self) -> Option<&ScalarPoly> {
        match &self.status {
            GaugeStatus::Solved(f) => Some(f),
            GaugeStatus::InfeasibleAtBound(_) => None,
        }
    }
}

/// Linear system over the monomial ansatz: one unknown per basis monomial in
/// graded-lex order (constant first), one equation per monomial appearing in
/// the operator images or the right-hand side.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub basis: Vec<Vec<u32>>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl LinearSystem {
    /// Builds the system for `op(f) = rhs` with `f` ranging over polynomials
    /// of total degree <= `bound`.
    pub fn build(
        op: impl Fn(&ScalarPoly) -> ScalarPoly,
        rhs: &ScalarPoly,
        bound: u32,
    ) -> Result<Self> {
        let space = rhs.space();
        let basis = monomials_up_to(space.dim(), bound);
        let images: Vec<ScalarPoly> = basis
            .iter()
            .map(|exps| {
                let m = ScalarPoly::monomial(space, exps.clone(), Rational::one())?;
                Ok(op(&m))
            })
            .collect::<Result<Vec<_>>>()?;
        // Deterministic row order: every monomial seen in an image or in rhs.
        let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
        for poly in images.iter().chain(std::iter::once(rhs)) {
            for (m, _) in poly.terms() {
                let next = row_of.len();
                row_of.entry(m.clone()).or_insert(next);
            }
        }
        let mut rows = vec![vec![Rational::zero(); basis.len()]; row_of.len()];
        let mut rhs_vec = vec![Rational::zero(); row_of.len()];
        for (col, image) in images.iter().enumerate() {
            for (m, c) in image.terms() {
                rows[row_of[m]][col] = c.clone();
            }
        }
        for (m, c) in rhs.terms() {
            rhs_vec[row_of[m]] = c.clone();
        }
        Ok(LinearSystem { basis, rows, rhs: rhs_vec })
    }

    /// Exact elimination; free unknowns (the constant always among them when
    /// the operator kills constants) are pinned to zero.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        match linalg::solve(self.rows.clone(), self.rhs.clone(), self.basis.len()) {
            LinearSolution::Solution(x) => Some(x),
            LinearSolution::Inconsistent => None,
        }
    }

    fn assemble(&self, space: &crate::space::PhaseSpace, coeffs: Vec<Rational>) -> Result<ScalarPoly> {
        ScalarPoly::from_terms(
            space,
            self.basis.iter().cloned().zip(coeffs),
        )
    }
}

fn check_one_form(alpha: &DiffForm) -> Result<()> {
    if alpha.degree() != 1 {
        return Err(CoreError::WrongDegree { expected: "1".into(), got: alpha.degree() });
    }
    Ok(())
}

/// Solves L_Gamma f = -i(Gamma) alpha over polynomials of degree <= bound.
/// Every `Solved` result is re-verified by substitution before returning.
pub fn gauge_fix_strong(ctx: &TwistedContext, alpha: &DiffForm, bound: u32) -> Result<GaugeResult> {
    check_one_form(alpha)?;
    assert!(bound >= 1, "degree bound must be at least 1");
    let gamma = ctx.gamma();
    let rhs = alpha.contract(gamma)?.scalar_value()?.neg_ref();
    let system = LinearSystem::build(|f| gamma.apply(f), &rhs, bound)?;
    let status = match system.solve() {
        Some(coeffs) => {
            let f = system.assemble(alpha.space(), coeffs)?;
            // Independent re-verification of the defining equation.
            if !gamma.apply(&f).checked_eq(&rhs)? {
                return Err(CoreError::PostconditionFailed(
                    "strong gauge solution failed L_Gamma f = -i(Gamma) alpha".into(),
                ));
            }
            GaugeStatus::Solved(f)
        }
        None => GaugeStatus::InfeasibleAtBound(bound),
    };
    Ok(GaugeResult { status, condition: GaugeCondition::Strong })
}

/// Solves L_Gamma(L_Gamma f) = -i(Gamma) d i(Gamma) alpha over polynomials of
/// degree <= bound; equivalently makes del_Gamma(alpha + df) = 0, which is
/// re-verified through `del_gamma` before returning.
pub fn gauge_fix_weak(ctx: &TwistedContext, alpha: &DiffForm, bound: u32) -> Result<GaugeResult> {
    check_one_form(alpha)?;
    assert!(bound >= 1, "degree bound must be at least 1");
    let gamma = ctx.gamma();
    let rhs = ctx.del_gamma(alpha)?.scalar_value()?.neg_ref();
    let system = LinearSystem::build(|f| gamma.apply(&gamma.apply(f)), &rhs, bound)?;
    let status = match system.solve() {
        Some(coeffs) => {
            let f = system.assemble(alpha.space(), coeffs)?;
            if !gamma.apply(&gamma.apply(&f)).checked_eq(&rhs)? {
                return Err(CoreError::PostconditionFailed(
                    "weak gauge solution failed L_Gamma^2 f = -del_Gamma alpha".into(),
                ));
            }
            let fixed = alpha.checked_add(&DiffForm::scalar(&f).d())?;
            if !ctx.del_gamma(&fixed)?.is_zero() {
                return Err(CoreError::PostconditionFailed(
                    "weak gauge solution failed del_Gamma(alpha + df) = 0".into(),
                ));
            }
            GaugeStatus::Solved(f)
        }
        None => GaugeStatus::InfeasibleAtBound(bound),
    };
    Ok(GaugeResult { status, condition: GaugeCondition::Weak })
}
