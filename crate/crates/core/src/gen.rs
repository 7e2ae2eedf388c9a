//! Deterministic seeded generation of polynomials, fields, and forms for the
//! identity catalogue and the property suites. Everything is reproducible
//! from a `u64` seed; coefficients are small nonzero integers so failures
//! print readably.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{DiffForm, VectorField};
use crate::poly::{rat_int, ScalarPoly};
use crate::space::PhaseSpace;

/// A seeded RNG stream, decorrelated per (seed, stream) pair.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(stream))
}

/// All exponent vectors of total degree <= `degree`, in graded-lex order.
pub fn monomials_up_to(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; dim];
    fn walk(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            walk(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    walk(&mut out, &mut current, 0, degree);
    out.sort_by_key(|e| crate::poly::Monomial::new(e.clone()));
    out
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=4i64);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Dense random polynomial: every monomial of degree <= `max_deg` carries a
/// nonzero small integer coefficient.
pub fn poly(rng: &mut ChaCha8Rng, space: &PhaseSpace, max_deg: u32) -> ScalarPoly {
    let terms = monomials_up_to(space.dim(), max_deg)
        .into_iter()
        .map(|exps| (exps, rat_int(nonzero_coeff(rng))))
        .collect::<Vec<_>>();
    ScalarPoly::from_terms(space, terms).expect("generated arity")
}

/// Random vector field with dense components of degree <= `max_deg`.
pub fn field(rng: &mut ChaCha8Rng, space: &PhaseSpace, max_deg: u32) -> VectorField {
    let components = (0..space.dim()).map(|_| poly(rng, space, max_deg)).collect();
    VectorField::new(space, components).expect("component count")
}

/// Random degree-k form with dense coefficients of degree <= `max_deg`.
pub fn form(rng: &mut ChaCha8Rng, space: &PhaseSpace, degree: usize, max_deg: u32) -> DiffForm {
    let mut terms = Vec::new();
    for tuple in increasing_tuples(space.dim(), degree) {
        terms.push((tuple, poly(rng, space, max_deg)));
    }
    DiffForm::from_terms(space, degree, terms).expect("generated tuples")
}

/// Hamiltonian vector field of a random function, written out directly from
/// the convention X_f = sum_i (df/dp_i) d/dq_i - (df/dq_i) d/dp_i. This is
/// deliberately independent of `sharp` so it can serve as its oracle.
pub fn hamiltonian_field(rng: &mut ChaCha8Rng, space: &PhaseSpace, max_deg: u32) -> (ScalarPoly, VectorField) {
    let f = poly(rng, space, max_deg);
    (f.clone(), hamiltonian_field_of(&f))
}

/// X_f from the fixed convention, by direct differentiation.
pub fn hamiltonian_field_of(f: &ScalarPoly) -> VectorField {
    let space = f.space().clone();
    let n = space.n();
    let mut components = vec![ScalarPoly::zero(&space); space.dim()];
    for i in 0..n {
        components[space.q(i)] = f.diff(space.p(i));
        components[space.p(i)] = f.diff(space.q(i)).neg_ref();
    }
    VectorField::new(&space, components).expect("component count")
}

/// Strictly increasing index tuples of the given length.
pub fn increasing_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn walk(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, start: usize, dim: usize, left: usize) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..dim {
            if dim - i < left {
                break;
            }
            current.push(i);
            walk(out, current, i + 1, dim, left - 1);
            current.pop();
        }
    }
    walk(&mut out, &mut current, 0, dim, len);
    out
}

/// Random rational point with small integer coordinates.
pub fn point(rng: &mut ChaCha8Rng, space: &PhaseSpace) -> Vec<crate::poly::Rational> {
    (0..space.dim()).map(|_| rat_int(rng.gen_range(-5..=5))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration_counts() {
        // C(2+3, 2) = 10 monomials of degree <= 3 in two variables
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        // C(4+3, 4) = 35 in four variables
        assert_eq!(monomials_up_to(4, 3).len(), 35);
        // graded-lex order starts at the constant
        assert_eq!(monomials_up_to(2, 2)[0], vec![0, 0]);
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(2, 2), vec![vec![0, 1]]);
        assert_eq!(increasing_tuples(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn generation_is_deterministic() {
        let s = PhaseSpace::standard(1);
        let a = poly(&mut rng(7, 0), &s, 3);
        let b = poly(&mut rng(7, 0), &s, 3);
        assert_eq!(a, b);
        let c = poly(&mut rng(8, 0), &s, 3);
        assert_ne!(a, c);
    }

    #[test]
    fn hamiltonian_field_matches_convention() {
        let s = PhaseSpace::standard(1);
        // H = p^2/2 -> p d/dq
        let h = ScalarPoly::coord(&s, 1).pow(2).scale(&crate::poly::rat(1, 2));
        let gamma = hamiltonian_field_of(&h);
        assert_eq!(gamma.component(0), &ScalarPoly::coord(&s, 1));
        assert!(gamma.component(1).is_zero());
    }
}
