//! Vector fields, differential forms, and the Cartan calculus on the fixed
//! phase space: wedge, exterior derivative, interior product, Lie derivative,
//! Lie bracket, pullback, and pushforward.
//!
//! Sign conventions are pinned once for the whole toolkit: forms are stored on
//! strictly increasing index tuples, `i(X)` removes the t-th index with sign
//! (-1)^t, and the bracket is the standard commutator [X,Y] = XY - YX.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::poly::{Rational, ScalarPoly};
use crate::space::PhaseSpace;

/// Strictly increasing coordinate-index tuple labelling a form component.
pub type IndexTuple = Box<[usize]>;

/// Polynomial vector field: one component per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    space: PhaseSpace,
    components: Vec<ScalarPoly>,
}

impl VectorField {
    pub fn new(space: &PhaseSpace, components: Vec<ScalarPoly>) -> Result<Self> {
        if components.len() != space.dim() {
            return Err(CoreError::DimensionError {
                expected: space.dim(),
                got: components.len(),
            });
        }
        for c in &components {
            space.check_same(c.space())?;
        }
        Ok(VectorField { space: space.clone(), components })
    }

    pub fn zero(space: &PhaseSpace) -> Self {
        VectorField {
            space: space.clone(),
            components: vec![ScalarPoly::zero(space); space.dim()],
        }
    }

    /// The constant unit field along coordinate `index`.
    pub fn basis(space: &PhaseSpace, index: usize) -> Self {
        let mut f = VectorField::zero(space);
        f.components[index] = ScalarPoly::one(space);
        f
    }

    /// The Euler (dilation) field sum_i x_i d/dx_i.
    pub fn euler(space: &PhaseSpace) -> Self {
        let components = (0..space.dim()).map(|i| ScalarPoly::coord(space, i)).collect();
        VectorField { space: space.clone(), components }
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn components(&self) -> &[ScalarPoly] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &ScalarPoly {
        &self.components[index]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ScalarPoly::is_zero)
    }

    /// Directional derivative X(f) = sum_i X^i df/dx_i.
    pub fn apply(&self, f: &ScalarPoly) -> ScalarPoly {
        let mut acc = ScalarPoly::zero(&self.space);
        for (i, xi) in self.components.iter().enumerate() {
            if !xi.is_zero() {
                acc = &acc + &(xi * &f.diff(i));
            }
        }
        acc
    }

    /// Standard commutator [X,Y]^i = X(Y^i) - Y(X^i).
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.space.check_same(&other.space)?;
        let components = (0..self.space.dim())
            .map(|i| &self.apply(&other.components[i]) - &other.apply(&self.components[i]))
            .collect();
        Ok(VectorField { space: self.space.clone(), components })
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        self.space.check_same(&other.space)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { space: self.space.clone(), components })
    }

    pub fn checked_sub(&self, other: &VectorField) -> Result<VectorField> {
        self.checked_add(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> VectorField {
        VectorField {
            space: self.space.clone(),
            components: self.components.iter().map(ScalarPoly::neg_ref).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> VectorField {
        VectorField {
            space: self.space.clone(),
            components: self.components.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Multiplies every component by the scalar `f`.
    pub fn mul_scalar(&self, f: &ScalarPoly) -> VectorField {
        VectorField {
            space: self.space.clone(),
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    pub fn checked_eq(&self, other: &VectorField) -> Result<bool> {
        self.space.check_same(&other.space)?;
        Ok(self.components == other.components)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term_coeff(f, c, first)?;
            write!(f, " d/d{}", self.space.name(i))?;
            first = false;
        }
        if first {
            write!(f, "0 d/d{}", self.space.name(0))?;
        }
        Ok(())
    }
}

/// Writes a coefficient polynomial with a leading `+`/`-` separator so the
/// printed field/form re-parses under the session grammar.
fn write_term_coeff(f: &mut fmt::Formatter<'_>, c: &ScalarPoly, first: bool) -> fmt::Result {
    let s = c.to_string();
    if first {
        write!(f, "{s}")
    } else if s.starts_with('-') {
        // Binary minus: the parser negates the whole following expression.
        write!(f, " - {}", c.neg_ref())
    } else {
        write!(f, " + {s}")
    }
}

/// Degree-k differential form with polynomial coefficients on strictly
/// increasing index tuples. Zero coefficients are never stored; a degree-0
/// form holds at most the empty tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm {
    space: PhaseSpace,
    degree: usize,
    coeffs: BTreeMap<IndexTuple, ScalarPoly>,
}

impl DiffForm {
    /// The zero form of the given degree. Degrees above 2n are allowed but
    /// necessarily stay empty (no increasing tuple of that length exists).
    pub fn zero(space: &PhaseSpace, degree: usize) -> Self {
        DiffForm { space: space.clone(), degree, coeffs: BTreeMap::new() }
    }

    /// Wraps a scalar as a degree-0 form.
    pub fn scalar(f: &ScalarPoly) -> Self {
        let mut form = DiffForm::zero(f.space(), 0);
        form.insert_sorted(Vec::new().into_boxed_slice(), f.clone());
        form
    }

    /// Builds a form from (index tuple, coefficient) pairs. Tuples may arrive
    /// unsorted; they are sign-normalized, and repeated indices kill the term.
    pub fn from_terms(
        space: &PhaseSpace,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, ScalarPoly)>,
    ) -> Result<Self> {
        let mut form = DiffForm::zero(space, degree);
        for (tuple, coeff) in terms {
            if tuple.len() != degree {
                return Err(CoreError::WrongDegree { expected: degree.to_string(), got: tuple.len() });
            }
            for &i in &tuple {
                if i >= space.dim() {
                    return Err(CoreError::DimensionError { expected: space.dim(), got: i });
                }
            }
            space.check_same(coeff.space())?;
            form.insert_signed(&tuple, coeff);
        }
        Ok(form)
    }

    /// The canonical symplectic 2-form sum_i dq_i ^ dp_i.
    pub fn canonical_symplectic(space: &PhaseSpace) -> Self {
        let mut form = DiffForm::zero(space, 2);
        for i in 0..space.n() {
            form.insert_sorted(
                vec![space.q(i), space.p(i)].into_boxed_slice(),
                ScalarPoly::one(space),
            );
        }
        form
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &ScalarPoly)> {
        self.coeffs.iter()
    }

    /// Coefficient on a strictly increasing tuple (zero when absent).
    pub fn coeff(&self, tuple: &[usize]) -> ScalarPoly {
        self.coeffs
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| ScalarPoly::zero(&self.space))
    }

    /// The scalar carried by a degree-0 form.
    pub fn scalar_value(&self) -> Result<ScalarPoly> {
        if self.degree != 0 {
            return Err(CoreError::WrongDegree { expected: "0".into(), got: self.degree });
        }
        Ok(self.coeff(&[]))
    }

    fn insert_sorted(&mut self, tuple: IndexTuple, coeff: ScalarPoly) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        match self.coeffs.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Inserts a possibly unsorted tuple, applying the permutation sign.
    fn insert_signed(&mut self, tuple: &[usize], coeff: ScalarPoly) {
        let mut sorted: Vec<usize> = tuple.to_vec();
        // Count inversions of the input tuple; a repeated index kills the term.
        let mut swaps = 0usize;
        for i in 0..sorted.len() {
            for j in (i + 1)..sorted.len() {
                match sorted[i].cmp(&sorted[j]) {
                    std::cmp::Ordering::Equal => return,
                    std::cmp::Ordering::Greater => swaps += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        sorted.sort_unstable();
        let signed = if swaps % 2 == 0 { coeff } else { coeff.neg_ref() };
        self.insert_sorted(sorted.into_boxed_slice(), signed);
    }

    pub fn checked_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.space.check_same(&other.space)?;
        if self.degree != other.degree {
            return Err(CoreError::WrongDegree {
                expected: self.degree.to_string(),
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.insert_sorted(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.checked_add(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> DiffForm {
        let coeffs = self.coeffs.iter().map(|(t, c)| (t.clone(), c.neg_ref())).collect();
        DiffForm { space: self.space.clone(), degree: self.degree, coeffs }
    }

    pub fn scale(&self, factor: &Rational) -> DiffForm {
        self.mul_scalar(&ScalarPoly::constant(&self.space, factor.clone()))
    }

    /// Multiplies every coefficient by the scalar `f`.
    pub fn mul_scalar(&self, f: &ScalarPoly) -> DiffForm {
        let mut out = DiffForm::zero(&self.space, self.degree);
        for (t, c) in &self.coeffs {
            out.insert_sorted(t.clone(), c * f);
        }
        out
    }

    pub fn checked_eq(&self, other: &DiffForm) -> Result<bool> {
        self.space.check_same(&other.space)?;
        Ok(self.degree == other.degree && self.coeffs == other.coeffs)
    }

    /// Graded-antisymmetric wedge product.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.space.check_same(&other.space)?;
        let degree = self.degree + other.degree;
        let mut out = DiffForm::zero(&self.space, degree);
        for (ta, ca) in &self.coeffs {
            for (tb, cb) in &other.coeffs {
                if ta.iter().any(|i| tb.contains(i)) {
                    continue;
                }
                // Sign of sorting the concatenation ta ++ tb.
                let inversions: usize =
                    ta.iter().map(|a| tb.iter().filter(|b| **b < *a).count()).sum();
                let mut merged: Vec<usize> = ta.iter().chain(tb.iter()).copied().collect();
                merged.sort_unstable();
                let prod = ca * cb;
                let signed = if inversions % 2 == 0 { prod } else { prod.neg_ref() };
                out.insert_sorted(merged.into_boxed_slice(), signed);
            }
        }
        Ok(out)
    }

    /// Exterior derivative; degree k -> k+1 and d(d(a)) = 0 exactly.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(&self.space, self.degree + 1);
        for (t, c) in &self.coeffs {
            for j in 0..self.space.dim() {
                if t.contains(&j) {
                    continue;
                }
                let dc = c.diff(j);
                if dc.is_zero() {
                    continue;
                }
                let pos = t.iter().filter(|&&i| i < j).count();
                let mut tuple: Vec<usize> = t.to_vec();
                tuple.insert(pos, j);
                let signed = if pos % 2 == 0 { dc } else { dc.neg_ref() };
                out.insert_sorted(tuple.into_boxed_slice(), signed);
            }
        }
        out
    }

    /// Interior product i(X) a; degree k -> k-1. Degree-0 input is an error.
    pub fn contract(&self, x: &VectorField) -> Result<DiffForm> {
        self.space.check_same(x.space())?;
        if self.degree == 0 {
            return Err(CoreError::ContractScalar);
        }
        let mut out = DiffForm::zero(&self.space, self.degree - 1);
        for (t, c) in &self.coeffs {
            for (pos, &i) in t.iter().enumerate() {
                let xi = x.component(i);
                if xi.is_zero() {
                    continue;
                }
                let mut tuple: Vec<usize> = t.to_vec();
                tuple.remove(pos);
                let prod = c * xi;
                let signed = if pos % 2 == 0 { prod } else { prod.neg_ref() };
                out.insert_sorted(tuple.into_boxed_slice(), signed);
            }
        }
        Ok(out)
    }

    /// Lie derivative via the Cartan formula L_X a = i(X)(da) + d(i(X)a);
    /// the degree-0 case is the directional derivative X(a).
    pub fn lie_derive(&self, x: &VectorField) -> DiffForm {
        assert_eq!(self.space, *x.space(), "space mismatch in lie_derive");
        if self.degree == 0 {
            let f = self.coeff(&[]);
            return DiffForm::scalar(&x.apply(&f));
        }
        let a = self.d().contract(x).expect("degree >= 1 after d");
        let b = self.contract(x).expect("degree >= 1").d();
        a.checked_add(&b).expect("same space and degree")
    }

    /// True iff every coefficient is a constant polynomial.
    pub fn has_constant_coeffs(&self) -> bool {
        self.coeffs.values().all(ScalarPoly::is_constant)
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.coeff(&[]));
        }
        let mut first = true;
        for (t, c) in &self.coeffs {
            write_term_coeff(f, c, first)?;
            let wedge: Vec<String> = t.iter().map(|&i| format!("d{}", self.space.name(i))).collect();
            write!(f, " {}", wedge.join("^"))?;
            first = false;
        }
        if first {
            let wedge: Vec<String> =
                (0..self.degree.min(self.space.dim())).map(|i| format!("d{}", self.space.name(i))).collect();
            write!(f, "0 {}", wedge.join("^"))?;
        }
        Ok(())
    }
}

/// Polynomial self-map of the phase space with a verified polynomial inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    space: PhaseSpace,
    forward: Vec<ScalarPoly>,
    inverse: Vec<ScalarPoly>,
}

impl PolyMap {
    /// Builds a map, symbolically verifying that the claimed inverse composes
    /// to the identity in both directions.
    pub fn new(space: &PhaseSpace, forward: Vec<ScalarPoly>, inverse: Vec<ScalarPoly>) -> Result<Self> {
        let dim = space.dim();
        if forward.len() != dim || inverse.len() != dim {
            return Err(CoreError::DimensionError {
                expected: dim,
                got: forward.len().max(inverse.len()),
            });
        }
        for c in forward.iter().chain(inverse.iter()) {
            space.check_same(c.space())?;
        }
        for i in 0..dim {
            let fwd_of_inv = forward[i].substitute(&inverse)?;
            let inv_of_fwd = inverse[i].substitute(&forward)?;
            let xi = ScalarPoly::coord(space, i);
            if fwd_of_inv != xi || inv_of_fwd != xi {
                return Err(CoreError::InvalidInverse(format!(
                    "component {} does not compose to the identity",
                    space.name(i)
                )));
            }
        }
        Ok(PolyMap { space: space.clone(), forward, inverse })
    }

    pub fn identity(space: &PhaseSpace) -> Self {
        let coords: Vec<ScalarPoly> = (0..space.dim()).map(|i| ScalarPoly::coord(space, i)).collect();
        PolyMap { space: space.clone(), forward: coords.clone(), inverse: coords }
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn forward(&self) -> &[ScalarPoly] {
        &self.forward
    }

    pub fn inverse(&self) -> &[ScalarPoly] {
        &self.inverse
    }

    /// Pullback of a form: coefficients composed with the map, differentials
    /// replaced by differentials of the components. Satisfies
    /// pullback(d a) = d(pullback(a)) exactly.
    pub fn pullback(&self, a: &DiffForm) -> Result<DiffForm> {
        self.space.check_same(a.space())?;
        if a.degree() == 0 {
            let f = a.scalar_value()?;
            return Ok(DiffForm::scalar(&f.substitute(&self.forward)?));
        }
        // d(Phi^i) as 1-forms, computed once.
        let d_components: Vec<DiffForm> = (0..self.space.dim())
            .map(|i| DiffForm::scalar(&self.forward[i]).d())
            .collect();
        let mut out = DiffForm::zero(&self.space, a.degree());
        for (t, c) in a.terms() {
            let mut term = DiffForm::scalar(&c.substitute(&self.forward)?);
            for &i in t.iter() {
                term = term.wedge(&d_components[i])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Pushforward of a vector field: Jacobian applied to the components,
    /// composed with the inverse map.
    pub fn pushforward(&self, x: &VectorField) -> Result<VectorField> {
        self.space.check_same(x.space())?;
        let dim = self.space.dim();
        let mut components = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut acc = ScalarPoly::zero(&self.space);
            for j in 0..dim {
                let dij = self.forward[i].diff(j);
                if !dij.is_zero() && !x.component(j).is_zero() {
                    acc = &acc + &(&dij * x.component(j));
                }
            }
            components.push(acc.substitute(&self.inverse)?);
        }
        VectorField::new(&self.space, components)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fwd: Vec<String> = self.forward.iter().map(|c| c.to_string()).collect();
        let inv: Vec<String> = self.inverse.iter().map(|c| c.to_string()).collect();
        write!(f, "({}) inverse ({})", fwd.join(", "), inv.join(", "))
    }
}

/// If `a == r * b` for a single rational constant `r` (with `b != 0`),
/// returns `r`. Returns None when no such constant exists or `b == 0`.
pub fn constant_ratio(a: &DiffForm, b: &DiffForm) -> Option<Rational> {
    if b.is_zero() || a.degree() != b.degree() || a.space() != b.space() {
        return None;
    }
    // Candidate from the first nonzero coefficient of b.
    let (t0, c0) = b.terms().next()?;
    let a0 = a.coeff(t0);
    let (m0, lead) = c0.terms().next()?;
    let r = a0.coeff(m0) / lead;
    if a.checked_eq(&b.scale(&r)).unwrap_or(false) {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn qp() -> PhaseSpace {
        PhaseSpace::standard(1)
    }

    fn q(s: &PhaseSpace) -> ScalarPoly {
        ScalarPoly::coord(s, 0)
    }

    fn p(s: &PhaseSpace) -> ScalarPoly {
        ScalarPoly::coord(s, 1)
    }

    fn one_form(s: &PhaseSpace, dq: ScalarPoly, dp: ScalarPoly) -> DiffForm {
        DiffForm::from_terms(s, 1, vec![(vec![0], dq), (vec![1], dp)]).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let s = qp();
        let dq = one_form(&s, ScalarPoly::one(&s), ScalarPoly::zero(&s));
        let dp = one_form(&s, ScalarPoly::zero(&s), ScalarPoly::one(&s));
        // dq ^ dp = canonical area form
        assert_eq!(dq.wedge(&dp).unwrap(), DiffForm::canonical_symplectic(&s));
        // dq ^ dq = 0
        assert!(dq.wedge(&dq).unwrap().is_zero());
        // (p dq) ^ (q dp) = pq dq^dp
        let a = one_form(&s, p(&s), ScalarPoly::zero(&s));
        let b = one_form(&s, ScalarPoly::zero(&s), q(&s));
        let expected = DiffForm::canonical_symplectic(&s).mul_scalar(&(&q(&s) * &p(&s)));
        assert_eq!(a.wedge(&b).unwrap(), expected);
        // antisymmetry of the merge sign: dp ^ dq = -dq^dp
        assert_eq!(dp.wedge(&dq).unwrap(), DiffForm::canonical_symplectic(&s).neg_ref());
    }

    #[test]
    fn exterior_derivative_examples() {
        let s = qp();
        // d(p^2/2) = p dp
        let h = DiffForm::scalar(&p(&s).pow(2).scale(&rat(1, 2)));
        assert_eq!(h.d(), one_form(&s, ScalarPoly::zero(&s), p(&s)));
        // d(p dq) = dp^dq = -dq^dp
        let theta = one_form(&s, p(&s), ScalarPoly::zero(&s));
        assert_eq!(theta.d(), DiffForm::canonical_symplectic(&s).neg_ref());
        // d(q dp - p dq) = 2 dq^dp
        let a = one_form(&s, p(&s).neg_ref(), q(&s));
        assert_eq!(a.d(), DiffForm::canonical_symplectic(&s).scale(&rat_int(2)));
    }

    #[test]
    fn interior_product_examples() {
        let s = qp();
        let gamma = VectorField::new(&s, vec![p(&s), ScalarPoly::zero(&s)]).unwrap(); // p d/dq
        let omega = DiffForm::canonical_symplectic(&s);
        // i(p dq/d)(dq^dp) = p dp
        assert_eq!(
            omega.contract(&gamma).unwrap(),
            one_form(&s, ScalarPoly::zero(&s), p(&s))
        );
        // i(d/dp)(dq) = 0
        let dq = one_form(&s, ScalarPoly::one(&s), ScalarPoly::zero(&s));
        assert!(dq.contract(&VectorField::basis(&s, 1)).unwrap().is_zero());
        // i(p d/dq)(p dq) = p^2
        let theta = one_form(&s, p(&s), ScalarPoly::zero(&s));
        assert_eq!(
            theta.contract(&gamma).unwrap().scalar_value().unwrap(),
            p(&s).pow(2)
        );
        // degree-0 contraction is rejected
        assert_eq!(
            DiffForm::scalar(&q(&s)).contract(&gamma).unwrap_err().code(),
            "ContractScalar"
        );
    }

    #[test]
    fn lie_derivative_examples() {
        let s = qp();
        let omega = DiffForm::canonical_symplectic(&s);
        let gamma = VectorField::new(&s, vec![p(&s), ScalarPoly::zero(&s)]).unwrap();
        // L_{p d/dq}(p^2/2) = 0
        let h = DiffForm::scalar(&p(&s).pow(2).scale(&rat(1, 2)));
        assert!(h.lie_derive(&gamma).is_zero());
        // L_{q d/dq + p d/dp}(dq^dp) = 2 dq^dp
        let euler = VectorField::euler(&s);
        assert_eq!(omega.lie_derive(&euler), omega.scale(&rat_int(2)));
        // L_{-p d/dp}(dq^dp) = -dq^dp
        let x1 = VectorField::new(&s, vec![ScalarPoly::zero(&s), p(&s).neg_ref()]).unwrap();
        assert_eq!(omega.lie_derive(&x1), omega.neg_ref());
    }

    #[test]
    fn bracket_examples() {
        let s = qp();
        let gamma = VectorField::new(&s, vec![p(&s), ScalarPoly::zero(&s)]).unwrap(); // p d/dq
        let dp = VectorField::basis(&s, 1);
        let dq = VectorField::basis(&s, 0);
        // [d/dp, p d/dq] = d/dq
        assert_eq!(dp.bracket(&gamma).unwrap(), dq);
        // [X, X] = 0
        assert!(gamma.bracket(&gamma).unwrap().is_zero());
        // [d/dq, p d/dq] = 0
        assert!(dq.bracket(&gamma).unwrap().is_zero());
    }

    #[test]
    fn polymap_verifies_inverse() {
        let s = qp();
        // (2q, p) with inverse (q/2, p)
        let m = PolyMap::new(
            &s,
            vec![q(&s).scale(&rat_int(2)), p(&s)],
            vec![q(&s).scale(&rat(1, 2)), p(&s)],
        )
        .unwrap();
        assert_eq!(m.forward()[0], q(&s).scale(&rat_int(2)));
        // a wrong inverse is rejected
        let bad = PolyMap::new(&s, vec![q(&s).scale(&rat_int(2)), p(&s)], vec![q(&s), p(&s)]);
        assert_eq!(bad.unwrap_err().code(), "InvalidInverse");
    }

    #[test]
    fn pullback_examples() {
        let s = qp();
        let omega = DiffForm::canonical_symplectic(&s);
        // identity
        let id = PolyMap::identity(&s);
        assert_eq!(id.pullback(&omega).unwrap(), omega);
        // (q,p) -> (2q,p): pullback of dq^dp is 2 dq^dp
        let scale = PolyMap::new(
            &s,
            vec![q(&s).scale(&rat_int(2)), p(&s)],
            vec![q(&s).scale(&rat(1, 2)), p(&s)],
        )
        .unwrap();
        assert_eq!(scale.pullback(&omega).unwrap(), omega.scale(&rat_int(2)));
        // (q,p) -> (p,q): pullback of dq^dp is -dq^dp
        let swap = PolyMap::new(&s, vec![p(&s), q(&s)], vec![p(&s), q(&s)]).unwrap();
        assert_eq!(swap.pullback(&omega).unwrap(), omega.neg_ref());
    }

    #[test]
    fn pushforward_examples() {
        let s = qp();
        let gamma = VectorField::new(&s, vec![p(&s), ScalarPoly::zero(&s)]).unwrap();
        let id = PolyMap::identity(&s);
        assert_eq!(id.pushforward(&gamma).unwrap(), gamma);
        let scale = PolyMap::new(
            &s,
            vec![q(&s).scale(&rat_int(2)), p(&s)],
            vec![q(&s).scale(&rat(1, 2)), p(&s)],
        )
        .unwrap();
        // (2q,p) pushes p d/dq to 2p d/dq
        assert_eq!(
            scale.pushforward(&gamma).unwrap(),
            VectorField::new(&s, vec![p(&s).scale(&rat_int(2)), ScalarPoly::zero(&s)]).unwrap()
        );
        // coordinate swap pushes d/dq to d/dp
        let swap = PolyMap::new(&s, vec![p(&s), q(&s)], vec![p(&s), q(&s)]).unwrap();
        assert_eq!(
            swap.pushforward(&VectorField::basis(&s, 0)).unwrap(),
            VectorField::basis(&s, 1)
        );
    }

    #[test]
    fn constant_ratio_detects_valence() {
        let s = qp();
        let omega = DiffForm::canonical_symplectic(&s);
        assert_eq!(constant_ratio(&omega.scale(&rat_int(-3)), &omega), Some(rat_int(-3)));
        assert_eq!(constant_ratio(&omega, &omega), Some(rat_int(1)));
        // -3p dq^dp is not a constant multiple of dq^dp
        let skew = omega.mul_scalar(&p(&s).scale(&rat_int(-3)));
        assert_eq!(constant_ratio(&skew, &omega), None);
    }

    #[test]
    fn display_round_trip_shapes() {
        let s = qp();
        let beta = one_form(&s, p(&s).pow(2), (&q(&s) * &p(&s)).neg_ref());
        assert_eq!(beta.to_string(), "p^2 dq - q*p dp");
        let x = VectorField::new(&s, vec![(&q(&s) * &p(&s)).neg_ref(), p(&s).pow(2).neg_ref()]).unwrap();
        assert_eq!(x.to_string(), "-q*p d/dq - p^2 d/dp");
        assert_eq!(VectorField::zero(&s).to_string(), "0 d/dq");
        assert_eq!(DiffForm::zero(&s, 2).to_string(), "0 dq^dp");
    }
}
