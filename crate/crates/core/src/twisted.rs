//! Twisted boundary and coboundary operators of a dynamical system
//! (M, omega, Gamma): d_Gamma = d . i(Gamma) . d raises degree by one,
//! del_Gamma = i(Gamma) . d . i(Gamma) lowers it by one, and both square to
//! zero. Iterated Lie derivatives along the dynamics live here too.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::exterior::{DiffForm, VectorField};
use crate::poly::ScalarPoly;
use crate::symplectic::SymplecticForm;

/// Default cap on iterated Lie derivatives.
pub const DEFAULT_ITERATION_BUDGET: usize = 16;

/// A dynamics Gamma with the ambient symplectic structure. Whether Gamma is
/// locally Hamiltonian is computed by the classifiers, never assumed.
#[derive(Debug, Clone)]
pub struct TwistedContext {
    gamma: VectorField,
    omega: SymplecticForm,
    iteration_budget: usize,
}

/// A value an iterated Lie derivative can act on.
#[derive(Debug, Clone, PartialEq)]
pub enum LieTarget {
    Scalar(ScalarPoly),
    Field(VectorField),
    Form(DiffForm),
}

impl LieTarget {
    pub fn is_zero(&self) -> bool {
        match self {
            LieTarget::Scalar(f) => f.is_zero(),
            LieTarget::Field(x) => x.is_zero(),
            LieTarget::Form(a) => a.is_zero(),
        }
    }
}

impl fmt::Display for LieTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTarget::Scalar(v) => write!(f, "{v}"),
            LieTarget::Field(v) => write!(f, "{v}"),
            LieTarget::Form(v) => write!(f, "{v}"),
        }
    }
}

impl TwistedContext {
    pub fn new(gamma: VectorField, omega: SymplecticForm) -> Result<Self> {
        gamma.space().check_same(omega.space())?;
        Ok(TwistedContext { gamma, omega, iteration_budget: DEFAULT_ITERATION_BUDGET })
    }

    /// Context over the canonical symplectic structure of Gamma's space.
    pub fn canonical(gamma: VectorField) -> Self {
        let omega = SymplecticForm::canonical(gamma.space());
        TwistedContext { gamma, omega, iteration_budget: DEFAULT_ITERATION_BUDGET }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.iteration_budget = budget;
        self
    }

    pub fn gamma(&self) -> &VectorField {
        &self.gamma
    }

    pub fn omega(&self) -> &SymplecticForm {
        &self.omega
    }

    pub fn iteration_budget(&self) -> usize {
        self.iteration_budget
    }

    /// d_Gamma a = d(i(Gamma)(d a)); degree k -> k+1. Degree-0 input is
    /// admitted: d_Gamma f = d(L_Gamma f).
    pub fn d_gamma(&self, a: &DiffForm) -> DiffForm {
        a.d().contract(&self.gamma).expect("degree >= 1 after d").d()
    }

    /// del_Gamma a = i(Gamma)(d(i(Gamma) a)); degree k -> k-1. Degree-0 input
    /// is rejected.
    pub fn del_gamma(&self, a: &DiffForm) -> Result<DiffForm> {
        self.gamma.space().check_same(a.space())?;
        if a.degree() == 0 {
            return Err(CoreError::ContractScalar);
        }
        a.contract(&self.gamma)?.d().contract(&self.gamma)
    }

    /// One application of L_Gamma to a target of any kind.
    pub fn lie_once(&self, target: &LieTarget) -> LieTarget {
        match target {
            LieTarget::Scalar(f) => LieTarget::Scalar(self.gamma.apply(f)),
            LieTarget::Field(x) => LieTarget::Field(self.gamma.bracket(x).expect("same space")),
            LieTarget::Form(a) => LieTarget::Form(a.lie_derive(&self.gamma)),
        }
    }

    /// L_Gamma^k target; k = 0 is the identity. Errors when `k` exceeds the
    /// configured budget.
    pub fn iter_lie(&self, target: &LieTarget, k: usize) -> Result<LieTarget> {
        if k > self.iteration_budget {
            return Err(CoreError::IterationBudgetExceeded {
                requested: k,
                budget: self.iteration_budget,
            });
        }
        let mut current = target.clone();
        for _ in 0..k {
            current = self.lie_once(&current);
        }
        Ok(current)
    }
}
