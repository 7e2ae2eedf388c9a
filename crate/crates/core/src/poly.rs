//! Canonical-form multivariate polynomials over exact rationals.
//!
//! A [`ScalarPoly`] is a map from exponent vectors to nonzero rational
//! coefficients, kept sorted under graded lexicographic order with
//! q_1 < ... < q_n < p_1 < ... < p_n. Two polynomials are equal iff their
//! term maps are identical, so equality doubles as exact zero-testing.
//!
//! Monomials in at most 7 coordinates with total degree <= 255 are packed
//! into a single u64 whose numeric order coincides with the graded-lex
//! order; larger spaces or degrees fall back to an explicit exponent vector.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::space::PhaseSpace;

pub use crate::rational::Rational;

/// Rational from an integer pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new_i64(num, den)
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_i64(num)
}

const PACK_DIM: usize = 7;
const PACK_DEGREE: u32 = 255;
const DEGREE_SHIFT: u32 = 56;

#[derive(Debug, Clone)]
enum MonoRepr {
    /// Byte 7 holds the total degree, byte i the exponent of coordinate i.
    /// u64 order = graded lex with the last coordinate most significant.
    Packed { key: u64, dim: u8 },
    Wide { exps: Box<[u32]>, degree: u32 },
}

/// Exponent vector of a monomial, with the total degree cached.
///
/// Ordering is graded lexicographic: lower total degree first, ties broken by
/// the most significant coordinate being the *last* one (so q < p for n = 1).
#[derive(Debug, Clone)]
pub struct Monomial(MonoRepr);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree: u32 = exps.iter().sum();
        if exps.len() <= PACK_DIM && degree <= PACK_DEGREE {
            let mut key = (degree as u64) << DEGREE_SHIFT;
            for (i, &e) in exps.iter().enumerate() {
                key |= (e as u64) << (8 * i);
            }
            Monomial(MonoRepr::Packed { key, dim: exps.len() as u8 })
        } else {
            Monomial(MonoRepr::Wide { exps: exps.into_boxed_slice(), degree })
        }
    }

    pub fn constant(dim: usize) -> Self {
        Monomial::new(vec![0; dim])
    }

    pub fn coord(dim: usize, index: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[index] = 1;
        Monomial::new(exps)
    }

    pub fn dim(&self) -> usize {
        match &self.0 {
            MonoRepr::Packed { dim, .. } => *dim as usize,
            MonoRepr::Wide { exps, .. } => exps.len(),
        }
    }

    /// Exponent of coordinate `i`.
    pub fn exp(&self, i: usize) -> u32 {
        match &self.0 {
            MonoRepr::Packed { key, .. } => ((key >> (8 * i)) & 0xFF) as u32,
            MonoRepr::Wide { exps, .. } => exps[i],
        }
    }

    pub fn exps_vec(&self) -> Vec<u32> {
        (0..self.dim()).map(|i| self.exp(i)).collect()
    }

    pub fn degree(&self) -> u32 {
        match &self.0 {
            MonoRepr::Packed { key, .. } => (key >> DEGREE_SHIFT) as u32,
            MonoRepr::Wide { degree, .. } => *degree,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    fn product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        if let (MonoRepr::Packed { key: a, dim }, MonoRepr::Packed { key: b, .. }) = (&self.0, &other.0) {
            // Byte lanes cannot carry into each other: every per-coordinate
            // sum is bounded by the degree sum.
            if ((a >> DEGREE_SHIFT) + (b >> DEGREE_SHIFT)) <= PACK_DEGREE as u64 {
                return Monomial(MonoRepr::Packed { key: a + b, dim: *dim });
            }
        }
        let exps = (0..self.dim()).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial::new(exps)
    }

    /// The pair (old exponent, monomial with coordinate `i` lowered by one),
    /// or `None` when the exponent is zero. Used by differentiation.
    fn lower(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.exp(i);
        if e == 0 {
            return None;
        }
        match &self.0 {
            MonoRepr::Packed { key, dim } => Some((
                e,
                Monomial(MonoRepr::Packed {
                    key: key - (1u64 << (8 * i)) - (1u64 << DEGREE_SHIFT),
                    dim: *dim,
                }),
            )),
            MonoRepr::Wide { exps, degree } => {
                let mut v = exps.to_vec();
                v[i] = e - 1;
                // Stay in the wide representation or repack, as new() decides.
                let _ = degree;
                Some((e, Monomial::new(v)))
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if let (MonoRepr::Packed { key: a, .. }, MonoRepr::Packed { key: b, .. }) = (&self.0, &other.0) {
            return a.cmp(b);
        }
        self.degree().cmp(&other.degree()).then_with(|| {
            let dim = self.dim();
            for i in (0..dim).rev() {
                let c = self.exp(i).cmp(&other.exp(i));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for Monomial {}

/// Multivariate polynomial in the 2n phase-space coordinates with exact
/// rational coefficients, always held in canonical form (like terms combined,
/// zero terms dropped, monomials sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarPoly {
    space: PhaseSpace,
    terms: BTreeMap<Monomial, Rational>,
}

impl ScalarPoly {
    /// The zero polynomial.
    pub fn zero(space: &PhaseSpace) -> Self {
        ScalarPoly { space: space.clone(), terms: BTreeMap::new() }
    }

    /// The constant polynomial 1.
    pub fn one(space: &PhaseSpace) -> Self {
        Self::constant(space, Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(space: &PhaseSpace, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::constant(space.dim()), value);
        }
        ScalarPoly { space: space.clone(), terms }
    }

    /// The coordinate function x_index.
    pub fn coord(space: &PhaseSpace, index: usize) -> Self {
        assert!(index < space.dim(), "coordinate index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::coord(space.dim(), index), Rational::one());
        ScalarPoly { space: space.clone(), terms }
    }

    /// A single monomial `coeff * x^exps`.
    pub fn monomial(space: &PhaseSpace, exps: Vec<u32>, coeff: Rational) -> Result<Self> {
        Self::from_terms(space, vec![(exps, coeff)])
    }

    /// Builds the canonical form from a raw term list: combines like terms,
    /// drops zeros, sorts. Errors with `SpaceMismatch` when an exponent vector
    /// has the wrong arity for the space.
    pub fn from_terms(
        space: &PhaseSpace,
        raw: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let dim = space.dim();
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exps, coeff) in raw {
            if exps.len() != dim {
                return Err(CoreError::SpaceMismatch(format!(
                    "term with {} exponents in a {dim}-coordinate space",
                    exps.len()
                )));
            }
            let key = Monomial::new(exps);
            let entry = terms.entry(key).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ScalarPoly { space: space.clone(), terms })
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    /// Term iterator in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        // Terms are sorted by degree first, so the last key is maximal.
        self.terms.keys().next_back().map(Monomial::degree).unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree() == 0
    }

    /// The value of a constant polynomial, `None` if non-constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact equality after checking the operands share a space.
    pub fn checked_eq(&self, other: &ScalarPoly) -> Result<bool> {
        self.space.check_same(&other.space)?;
        Ok(self.terms == other.terms)
    }

    pub fn checked_add(&self, other: &ScalarPoly) -> Result<ScalarPoly> {
        self.space.check_same(&other.space)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ScalarPoly { space: self.space.clone(), terms })
    }

    pub fn checked_sub(&self, other: &ScalarPoly) -> Result<ScalarPoly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &ScalarPoly) -> Result<ScalarPoly> {
        self.space.check_same(&other.space)?;
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let key = ma.product(mb);
                match terms.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(ca * cb);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += ca * cb;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ScalarPoly { space: self.space.clone(), terms })
    }

    pub fn neg_ref(&self) -> ScalarPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        ScalarPoly { space: self.space.clone(), terms }
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: &Rational) -> ScalarPoly {
        if factor.is_zero() {
            return ScalarPoly::zero(&self.space);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect();
        ScalarPoly { space: self.space.clone(), terms }
    }

    /// Exact integer power by repeated multiplication.
    pub fn pow(&self, exp: u32) -> ScalarPoly {
        let mut acc = ScalarPoly::one(&self.space);
        for _ in 0..exp {
            acc = acc.checked_mul(self).expect("same space");
        }
        acc
    }

    /// Exact partial derivative with respect to coordinate `coord`.
    pub fn diff(&self, coord: usize) -> ScalarPoly {
        assert!(coord < self.space.dim(), "coordinate index out of range");
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(coord) {
                terms.insert(lowered, c * Rational::from_i64(e as i64));
            }
        }
        ScalarPoly { space: self.space.clone(), terms }
    }

    /// Exact evaluation at a rational point of length 2n.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let dim = self.space.dim();
        if point.len() != dim {
            return Err(CoreError::DimensionError { expected: dim, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes `subs[i]` for coordinate i. Used for composition with
    /// polynomial maps.
    pub fn substitute(&self, subs: &[ScalarPoly]) -> Result<ScalarPoly> {
        let dim = self.space.dim();
        if subs.len() != dim {
            return Err(CoreError::DimensionError { expected: dim, got: subs.len() });
        }
        for s in subs {
            self.space.check_same(s.space())?;
        }
        // Powers of each substituted coordinate, computed once up to the
        // largest exponent that actually occurs.
        let mut max_exp = vec![0u32; dim];
        for m in self.terms.keys() {
            for (i, slot) in max_exp.iter_mut().enumerate() {
                *slot = (*slot).max(m.exp(i));
            }
        }
        let mut powers: Vec<Vec<ScalarPoly>> = Vec::with_capacity(dim);
        for (i, s) in subs.iter().enumerate() {
            let mut row = vec![ScalarPoly::one(&self.space)];
            for e in 1..=max_exp[i] {
                let next = row[(e - 1) as usize].checked_mul(s)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = ScalarPoly::zero(&self.space);
        for (m, c) in &self.terms {
            let mut term = ScalarPoly::constant(&self.space, c.clone());
            for (i, row) in powers.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    term = term.checked_mul(&row[e as usize])?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// True iff `self - other` is a constant polynomial. This is the
    /// "equal modulo an additive constant" comparison used for potentials.
    pub fn eq_mod_constant(&self, other: &ScalarPoly) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_constant())
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        self.checked_add(rhs).expect("space mismatch in +")
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        self.checked_sub(rhs).expect("space mismatch in -")
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        self.checked_mul(rhs).expect("space mismatch in *")
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        self.neg_ref()
    }
}

impl fmt::Display for ScalarPoly {
    /// Canonical printing, highest monomial first; the output re-parses under
    /// the session expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = (0..self.space.dim())
                .filter_map(|idx| {
                    let e = m.exp(idx);
                    if e == 0 {
                        return None;
                    }
                    let name = self.space.name(idx);
                    Some(if e == 1 { name.to_string() } else { format!("{name}^{e}") })
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp() -> PhaseSpace {
        PhaseSpace::standard(1)
    }

    fn q(s: &PhaseSpace) -> ScalarPoly {
        ScalarPoly::coord(s, 0)
    }

    fn p(s: &PhaseSpace) -> ScalarPoly {
        ScalarPoly::coord(s, 1)
    }

    #[test]
    fn normalize_combines_like_terms() {
        let s = qp();
        // 1*q + 2*q -> 3*q
        let f = ScalarPoly::from_terms(&s, vec![(vec![1, 0], rat_int(1)), (vec![1, 0], rat_int(2))])
            .unwrap();
        assert_eq!(f, q(&s).scale(&rat_int(3)));
    }

    #[test]
    fn normalize_cancels_to_zero() {
        let s = qp();
        // q*p - q*p -> 0
        let f = ScalarPoly::from_terms(
            &s,
            vec![(vec![1, 1], rat_int(1)), (vec![1, 1], rat_int(-1))],
        )
        .unwrap();
        assert!(f.is_zero());
        assert_eq!(f, ScalarPoly::zero(&s));
    }

    #[test]
    fn normalize_adds_rationals() {
        let s = qp();
        // (1/2)p^2 + (1/2)p^2 -> p^2
        let f = ScalarPoly::from_terms(
            &s,
            vec![(vec![0, 2], rat(1, 2)), (vec![0, 2], rat(1, 2))],
        )
        .unwrap();
        assert_eq!(f, p(&s).pow(2));
    }

    #[test]
    fn from_terms_rejects_wrong_arity() {
        let s = qp();
        let err = ScalarPoly::from_terms(&s, vec![(vec![1, 0, 0], rat_int(1))]).unwrap_err();
        assert_eq!(err.code(), "SpaceMismatch");
    }

    #[test]
    fn diff_power_rule() {
        let s = qp();
        let h = p(&s).pow(2).scale(&rat(1, 2)); // p^2/2
        assert_eq!(h.diff(1), p(&s));
        assert!(h.diff(0).is_zero());
        // d/dp (q*p*p) = 2qp
        let f = &q(&s) * &p(&s).pow(2);
        assert_eq!(f.diff(1), (&q(&s) * &p(&s)).scale(&rat_int(2)));
    }

    #[test]
    fn eval_exact() {
        let s = qp();
        let f = &p(&s).pow(2) + &q(&s); // p^2 + q
        assert_eq!(f.eval(&[rat_int(1), rat_int(2)]).unwrap(), rat_int(5));
        assert_eq!(ScalarPoly::zero(&s).eval(&[rat_int(7), rat_int(-3)]).unwrap(), rat_int(0));
        let h = p(&s).pow(2).scale(&rat(1, 2));
        assert_eq!(h.eval(&[rat_int(0), rat_int(3)]).unwrap(), rat(9, 2));
        assert_eq!(
            f.eval(&[rat_int(1)]).unwrap_err().code(),
            "DimensionError"
        );
    }

    #[test]
    fn equality_is_canonical() {
        let s = qp();
        // (q+p)^2 == q^2 + 2qp + p^2
        let lhs = (&q(&s) + &p(&s)).pow(2);
        let rhs = &(&q(&s).pow(2) + &(&q(&s) * &p(&s)).scale(&rat_int(2))) + &p(&s).pow(2);
        assert!(lhs.checked_eq(&rhs).unwrap());
        assert!(!q(&s).checked_eq(&p(&s)).unwrap());
    }

    #[test]
    fn checked_ops_reject_mixed_spaces() {
        let a = qp();
        let b = PhaseSpace::new(1, vec!["x".into(), "y".into()]).unwrap();
        let f = q(&a);
        let g = ScalarPoly::coord(&b, 0);
        assert_eq!(f.checked_add(&g).unwrap_err().code(), "SpaceMismatch");
        assert_eq!(f.checked_eq(&g).unwrap_err().code(), "SpaceMismatch");
    }

    #[test]
    fn substitute_composes() {
        let s = qp();
        // f(q,p) = q^2 + p, substitute q -> q + p, p -> 2p.
        let f = &q(&s).pow(2) + &p(&s);
        let composed = f
            .substitute(&[&q(&s) + &p(&s), p(&s).scale(&rat_int(2))])
            .unwrap();
        let expected = &(&q(&s) + &p(&s)).pow(2) + &p(&s).scale(&rat_int(2));
        assert_eq!(composed, expected);
    }

    #[test]
    fn display_is_canonical() {
        let s = qp();
        let f = &(&p(&s).pow(2) - &(&q(&s) * &p(&s)).scale(&rat(1, 2))) + &ScalarPoly::constant(&s, rat_int(3));
        assert_eq!(f.to_string(), "p^2 - 1/2*q*p + 3");
        assert_eq!(ScalarPoly::zero(&s).to_string(), "0");
        assert_eq!(q(&s).neg_ref().to_string(), "-q");
    }

    #[test]
    fn grlex_order_q_below_p() {
        let a = Monomial::new(vec![1, 0]); // q
        let b = Monomial::new(vec![0, 1]); // p
        assert!(a < b);
        let qp = Monomial::new(vec![1, 1]);
        let p2 = Monomial::new(vec![0, 2]);
        assert!(qp < p2);
        assert!(Monomial::new(vec![0, 0]) < a);
    }

    #[test]
    fn wide_monomials_behave_like_packed() {
        // force the wide representation with a degree above 255
        let hi = Monomial::new(vec![300, 0]);
        let lo = Monomial::new(vec![0, 3]);
        assert!(lo < hi);
        assert_eq!(hi.degree(), 300);
        assert_eq!(hi.exp(0), 300);
        let prod = hi.product(&hi);
        assert_eq!(prod.exp(0), 600);
        // high-degree polynomials still differentiate exactly
        let s = qp();
        let f = ScalarPoly::monomial(&s, vec![300, 0], rat_int(1)).unwrap();
        let df = f.diff(0);
        assert_eq!(df, ScalarPoly::monomial(&s, vec![299, 0], rat_int(300)).unwrap());
        // packed/wide comparison crosses the boundary consistently
        let mid = Monomial::new(vec![255, 0]);
        assert!(mid < hi);
        assert!(mid > lo);
    }
}
