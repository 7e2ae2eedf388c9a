//! Symplectic structure services: validation of candidate 2-forms, the
//! musical isomorphisms, the Poisson bracket, the Liouville-type field, and
//! the homotopy operator that decides exactness constructively on R^2n.
//!
//! Conventions (fixed once, printed in every report): omega_0 = sum_i
//! dq_i^dp_i, Hamiltonian fields satisfy i(X_f)omega = df, and {q,p} = +1.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::exterior::{DiffForm, VectorField};
use crate::linalg;
use crate::poly::{rat, Rational, ScalarPoly};
use crate::space::PhaseSpace;

/// The orientation / pairing convention used throughout, quoted verbatim in
/// reports so sign-sensitive results are auditable.
pub const CONVENTION: &str = "omega=sum dq_i^dp_i; i(X_f)omega=df; {q,p}=+1";

/// Note attached to classification output: on this star-shaped connected
/// domain, closed and exact coincide.
pub const DOMAIN_NOTE: &str =
    "domain R^2n (connected, star-shaped): locally-Hamiltonian coincides with Hamiltonian";

/// A rational evaluation point in phase space.
pub type Point = Vec<Rational>;

fn point_string(p: &[Rational]) -> String {
    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

/// Nondegeneracy evidence for a candidate symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub enum Nondegeneracy {
    /// The coefficient-matrix determinant is a nonzero constant: exact proof.
    ConstantNonzeroDet,
    /// Non-constant determinant, nonzero at every listed sample point:
    /// evidence only, not a proof.
    SampledNonzeroDet(Vec<Point>),
    /// The determinant vanishes at the witness point: exact disproof.
    Degenerate(Point),
}

impl fmt::Display for Nondegeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nondegeneracy::ConstantNonzeroDet => write!(f, "nondegenerate (constant nonzero determinant)"),
            Nondegeneracy::SampledNonzeroDet(pts) => {
                write!(f, "nondegenerate at {} sample points (evidence, not proof)", pts.len())
            }
            Nondegeneracy::Degenerate(p) => write!(f, "degenerate at {}", point_string(p)),
        }
    }
}

/// Validation record for a candidate symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct Validity {
    pub closed: bool,
    pub nondegeneracy: Nondegeneracy,
}

/// A degree-2 form together with its validation evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    form: DiffForm,
    validity: Validity,
}

/// Deterministic rational sample set used for nondegeneracy evidence; the
/// origin comes first so forms vanishing on a coordinate axis are caught.
fn sample_points(space: &PhaseSpace) -> Vec<Point> {
    const NUM: [i64; 10] = [0, 1, -1, 2, -2, 1, -1, 3, -3, 2];
    const DEN: [i64; 10] = [1, 1, 1, 1, 1, 2, 2, 1, 1, 3];
    let dim = space.dim();
    (0..24)
        .map(|k| {
            (0..dim)
                .map(|i| {
                    if k == 0 {
                        Rational::zero()
                    } else {
                        let idx = (k * (2 * i + 3) + i) % 10;
                        rat(NUM[idx], DEN[idx])
                    }
                })
                .collect()
        })
        .collect()
}

/// Checks closedness exactly and nondegeneracy exactly when the coefficient
/// matrix determinant is constant, otherwise at the deterministic sample set.
pub fn validate_symplectic(form: &DiffForm) -> Result<SymplecticForm> {
    if form.degree() != 2 {
        return Err(CoreError::WrongDegree { expected: "2".into(), got: form.degree() });
    }
    let closed = form.d().is_zero();
    let matrix = coefficient_matrix(form);
    let det = poly_det(&matrix, form.space());
    let nondegeneracy = if let Some(value) = det.constant_value() {
        if value.is_zero() {
            Nondegeneracy::Degenerate(vec![Rational::zero(); form.space().dim()])
        } else {
            Nondegeneracy::ConstantNonzeroDet
        }
    } else {
        let points = sample_points(form.space());
        match points.iter().find(|p| det.eval(p).expect("sample arity").is_zero()) {
            Some(p) => Nondegeneracy::Degenerate(p.clone()),
            None => Nondegeneracy::SampledNonzeroDet(points),
        }
    };
    Ok(SymplecticForm { form: form.clone(), validity: Validity { closed, nondegeneracy } })
}

/// The antisymmetric 2n x 2n coefficient matrix of a 2-form.
fn coefficient_matrix(form: &DiffForm) -> Vec<Vec<ScalarPoly>> {
    let space = form.space();
    let dim = space.dim();
    let mut m = vec![vec![ScalarPoly::zero(space); dim]; dim];
    for (t, c) in form.terms() {
        let (i, j) = (t[0], t[1]);
        m[i][j] = c.clone();
        m[j][i] = c.neg_ref();
    }
    m
}

/// Determinant of a polynomial matrix by cofactor expansion; the matrices
/// here are at most 2n x 2n.
fn poly_det(m: &[Vec<ScalarPoly>], space: &PhaseSpace) -> ScalarPoly {
    let n = m.len();
    if n == 0 {
        return ScalarPoly::one(space);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ScalarPoly::zero(space);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<ScalarPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry * &poly_det(&minor, space);
        acc = if col % 2 == 0 { &acc + &cofactor } else { &acc - &cofactor };
    }
    acc
}

impl SymplecticForm {
    /// The canonical structure omega_0 on the given space.
    pub fn canonical(space: &PhaseSpace) -> Self {
        validate_symplectic(&DiffForm::canonical_symplectic(space)).expect("degree 2")
    }

    pub fn form(&self) -> &DiffForm {
        &self.form
    }

    pub fn validity(&self) -> &Validity {
        &self.validity
    }

    pub fn space(&self) -> &PhaseSpace {
        self.form.space()
    }

    /// Closed with no degeneracy witness.
    pub fn is_valid(&self) -> bool {
        self.validity.closed && !matches!(self.validity.nondegeneracy, Nondegeneracy::Degenerate(_))
    }

    /// The musical "flat": beta_X = i(X)omega.
    pub fn flat(&self, x: &VectorField) -> DiffForm {
        self.form.contract(x).expect("degree 2 contracts")
    }

    /// The musical "sharp": the unique X with i(X)omega = beta, available when
    /// the coefficient matrix is constant and invertible.
    pub fn sharp(&self, beta: &DiffForm) -> Result<VectorField> {
        self.space().check_same(beta.space())?;
        if beta.degree() != 1 {
            return Err(CoreError::WrongDegree { expected: "1".into(), got: beta.degree() });
        }
        if !self.form.has_constant_coeffs() {
            return Err(CoreError::NonconstantOmega);
        }
        let space = self.space();
        let dim = space.dim();
        // Constant matrix M with (i(X)omega)_k = sum_i M[k][i] X^i.
        let mut m = vec![vec![Rational::zero(); dim]; dim];
        for (t, c) in self.form.terms() {
            let v = c.constant_value().expect("constant coefficients");
            let (i, j) = (t[0], t[1]);
            // c dx_i^dx_j contributes c X^i to slot j and -c X^j to slot i.
            m[j][i] = v.clone();
            m[i][j] = -v;
        }
        let inv = linalg::invert(&m)
            .ok_or_else(|| CoreError::DegenerateOmega("constant coefficient matrix is singular".into()))?;
        let mut components = Vec::with_capacity(dim);
        for row in &inv {
            let mut acc = ScalarPoly::zero(space);
            for (k, entry) in row.iter().enumerate() {
                if !entry.is_zero() {
                    acc = &acc + &beta.coeff(&[k]).scale(entry);
                }
            }
            components.push(acc);
        }
        VectorField::new(space, components)
    }

    /// Poisson bracket {f,g} = omega(X_f, X_g), computed through sharp and
    /// two contractions.
    pub fn poisson(&self, f: &ScalarPoly, g: &ScalarPoly) -> Result<ScalarPoly> {
        let xf = self.sharp(&DiffForm::scalar(f).d())?;
        let xg = self.sharp(&DiffForm::scalar(g).d())?;
        self.flat(&xf).contract(&xg)?.scalar_value()
    }

    /// The Hamiltonian vector field X_f with i(X_f)omega = df.
    pub fn hamiltonian_field(&self, f: &ScalarPoly) -> Result<VectorField> {
        self.sharp(&DiffForm::scalar(f).d())
    }
}

/// Result of the homotopy operator: `a = d(primitive) + residual`, with
/// `residual = 0` iff `a` is exact (on this domain, iff closed).
#[derive(Debug, Clone, PartialEq)]
pub struct Homotopy {
    pub primitive: DiffForm,
    pub residual: DiffForm,
}

impl Homotopy {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Poincare homotopy operator on the star-shaped domain: for a degree-k form
/// (k >= 1) returns a primitive normalized to vanish at the origin, plus the
/// residual a - d(primitive). Each monomial coefficient is scaled by
/// 1/(k + monomial degree) and the result contracted with the Euler field.
pub fn homotopy_potential(a: &DiffForm) -> Result<Homotopy> {
    let k = a.degree();
    if k == 0 {
        return Err(CoreError::WrongDegree { expected: ">=1".into(), got: 0 });
    }
    let space = a.space();
    let mut scaled = DiffForm::zero(space, k);
    for (t, c) in a.terms() {
        let mut scaled_coeff = Vec::new();
        for (m, coeff) in c.terms() {
            let weight = rat(1, k as i64 + m.degree() as i64);
            scaled_coeff.push((m.exps_vec(), coeff * &weight));
        }
        let poly = ScalarPoly::from_terms(space, scaled_coeff)?;
        scaled = scaled.checked_add(&DiffForm::from_terms(space, k, vec![(t.to_vec(), poly)])?)?;
    }
    let primitive = scaled.contract(&VectorField::euler(space))?;
    let residual = a.checked_sub(&primitive.d())?;
    Ok(Homotopy { primitive, residual })
}

/// The Liouville-type field X_1 of a 1-form theta: with omega = -d(theta)
/// symplectic and constant, X_1 = sharp(omega, theta) satisfies
/// L_{X_1} omega = -omega, which is verified before returning.
pub fn liouville_field(theta: &DiffForm) -> Result<VectorField> {
    if theta.degree() != 1 {
        return Err(CoreError::WrongDegree { expected: "1".into(), got: theta.degree() });
    }
    let omega_form = theta.d().neg_ref();
    let omega = validate_symplectic(&omega_form)?;
    let x1 = omega.sharp(theta)?;
    let lhs = omega_form.lie_derive(&x1);
    if !lhs.checked_eq(&omega_form.neg_ref())? {
        return Err(CoreError::PostconditionFailed(
            "L_{X_1}(-d theta) != -(-d theta)".into(),
        ));
    }
    Ok(x1)
}
