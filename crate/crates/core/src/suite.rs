//! Executable identity catalogue for the twisted operators.
//!
//! Every algebraic identity satisfied by d_X, del_X, i(X), L_X, and d is
//! checked by exact equality on seeded random instances. Arithmetic is exact,
//! so one failing instance disproves an identity; repetition only widens
//! input coverage. The same runner backs the `identities` CLI command and the
//! acceptance tests.

use std::fmt;

use rand_chacha::ChaCha8Rng;

use crate::exterior::{DiffForm, VectorField};
use crate::gen;
use crate::space::PhaseSpace;
use crate::twisted::TwistedContext;

/// Outcome of one identity over all requested instances.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of the whole catalogue.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases_per_dim: usize,
    pub dims: Vec<usize>,
    pub identities: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityReport::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identity catalogue: seed {}, {} cases per dimension, dims {:?}",
            self.seed, self.cases_per_dim, self.dims
        )?;
        for id in &self.identities {
            if id.passed() {
                writeln!(f, "  {}: {} cases, PASS", id.name, id.cases)?;
            } else {
                writeln!(f, "  {}: {} cases, FAIL ({})", id.name, id.cases, id.failures.join("; "))?;
            }
        }
        Ok(())
    }
}

fn d_x(x: &VectorField, a: &DiffForm) -> DiffForm {
    a.d().contract(x).expect("degree >= 1 after d").d()
}

fn del_x(x: &VectorField, a: &DiffForm) -> DiffForm {
    a.contract(x).expect("degree >= 1").d().contract(x).expect("degree >= 1 after d")
}

fn l_x(x: &VectorField, a: &DiffForm) -> DiffForm {
    a.lie_derive(x)
}

/// Degrees used per case: cycles through `lo..=hi` so every admissible degree
/// is exercised.
fn cycle_degree(case: usize, lo: usize, hi: usize) -> usize {
    lo + case % (hi - lo + 1)
}

struct Ctx<'a> {
    rng: &'a mut ChaCha8Rng,
    space: &'a PhaseSpace,
    x_deg: u32,
    coeff_deg: u32,
    case: usize,
}

impl Ctx<'_> {
    fn x(&mut self) -> VectorField {
        gen::field(self.rng, self.space, self.x_deg)
    }

    fn form(&mut self, degree: usize) -> DiffForm {
        gen::form(self.rng, self.space, degree, self.coeff_deg)
    }

    fn top(&self) -> usize {
        self.space.dim()
    }
}

type Check = fn(&mut Ctx) -> Result<(), String>;

fn eq(lhs: &DiffForm, rhs: &DiffForm, label: &str) -> Result<(), String> {
    if lhs.checked_eq(rhs).map_err(|e| e.to_string())? {
        Ok(())
    } else {
        Err(format!("{label}: lhs != rhs"))
    }
}

fn zero(v: &DiffForm, label: &str) -> Result<(), String> {
    if v.is_zero() {
        Ok(())
    } else {
        Err(format!("{label}: expected 0"))
    }
}

fn check_dx_squared(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 0, c.top()));
    zero(&d_x(&x, &d_x(&x, &a)), "d_X(d_X a)")
}

fn check_d_dx_zero(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 0, c.top()));
    zero(&d_x(&x, &a).d(), "d(d_X a)")?;
    zero(&d_x(&x, &a.d()), "d_X(d a)")
}

fn check_dx_commutes_lx(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 0, c.top()));
    eq(&d_x(&x, &l_x(&x, &a)), &l_x(&x, &d_x(&x, &a)), "d_X L_X = L_X d_X")
}

fn check_dx_ix_homotopy(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let k = cycle_degree(c.case, 0, c.top());
    let a = c.form(k);
    let mut lhs = d_x(&x, &a).contract(&x).expect("degree k+1");
    if k >= 1 {
        let ixa = a.contract(&x).expect("k >= 1");
        lhs = lhs.checked_add(&d_x(&x, &ixa)).map_err(|e| e.to_string())?;
    }
    eq(&lhs, &l_x(&x, &l_x(&x, &a)), "d_X i(X) + i(X) d_X = L_X^2")
}

fn check_dx_product_rule(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let r = cycle_degree(c.case, 0, c.top() - 1);
    let a = c.form(r);
    let b = c.form(r);
    let lhs = d_x(&x, &a.wedge(&b).map_err(|e| e.to_string())?);
    let sign = |form: DiffForm| if r % 2 == 0 { form } else { form.neg_ref() };
    let rhs = d_x(&x, &a)
        .wedge(&b)
        .and_then(|t| t.checked_add(&sign(a.wedge(&d_x(&x, &b))?)))
        .and_then(|t| t.checked_add(&a.d().wedge(&l_x(&x, &b))?))
        .and_then(|t| t.checked_add(&sign(l_x(&x, &a).wedge(&b.d())?)))
        .map_err(|e| e.to_string())?;
    eq(&lhs, &rhs, "d_X(a^b) product rule")
}

fn check_delx_squared(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 2, c.top()));
    zero(&del_x(&x, &del_x(&x, &a)), "del_X(del_X a)")
}

fn check_ix_delx_zero(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 2, c.top()));
    zero(&del_x(&x, &a).contract(&x).map_err(|e| e.to_string())?, "i(X) del_X a")?;
    zero(&del_x(&x, &a.contract(&x).map_err(|e| e.to_string())?), "del_X i(X) a")
}

fn check_delx_commutes_lx(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 1, c.top()));
    eq(&del_x(&x, &l_x(&x, &a)), &l_x(&x, &del_x(&x, &a)), "del_X L_X = L_X del_X")
}

fn check_delx_d_eq_ix_dx(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 0, c.top()));
    let lhs = del_x(&x, &a.d());
    let rhs = d_x(&x, &a).contract(&x).expect("degree k+1");
    eq(&lhs, &rhs, "del_X d = i(X) d_X")
}

fn check_d_delx_eq_dx_ix(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let a = c.form(cycle_degree(c.case, 1, c.top()));
    let lhs = del_x(&x, &a).d();
    let rhs = d_x(&x, &a.contract(&x).expect("k >= 1"));
    eq(&lhs, &rhs, "d del_X = d_X i(X)")
}

fn check_delx_d_homotopy(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let k = cycle_degree(c.case, 0, c.top());
    let a = c.form(k);
    let mut lhs = del_x(&x, &a.d());
    if k >= 1 {
        lhs = lhs.checked_add(&del_x(&x, &a).d()).map_err(|e| e.to_string())?;
    }
    eq(&lhs, &l_x(&x, &l_x(&x, &a)), "del_X d + d del_X = L_X^2")
}

fn check_delx_dx_homotopy(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let k = cycle_degree(c.case, 0, c.top());
    let a = c.form(k);
    let mut lhs = del_x(&x, &d_x(&x, &a));
    if k >= 1 {
        lhs = lhs.checked_add(&d_x(&x, &del_x(&x, &a))).map_err(|e| e.to_string())?;
    }
    eq(&lhs, &l_x(&x, &l_x(&x, &l_x(&x, &a))), "del_X d_X + d_X del_X = L_X^3")
}

fn check_delx_product_rule(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let r = cycle_degree(c.case, 1, c.top() - 1);
    let a = c.form(r);
    let b = c.form(r);
    let lhs = del_x(&x, &a.wedge(&b).map_err(|e| e.to_string())?);
    let sign = |form: DiffForm| if r % 2 == 0 { form } else { form.neg_ref() };
    let ix = |f: &DiffForm| f.contract(&x).expect("r >= 1");
    let rhs = del_x(&x, &a)
        .wedge(&b)
        .and_then(|t| t.checked_add(&sign(a.wedge(&del_x(&x, &b))?)))
        .and_then(|t| t.checked_add(&ix(&a).wedge(&l_x(&x, &b))?))
        .and_then(|t| t.checked_add(&sign(l_x(&x, &a).wedge(&ix(&b))?)))
        .map_err(|e| e.to_string())?;
    eq(&lhs, &rhs, "del_X(a^b) product rule")
}

/// Membership chain for the twisted cohomology spaces: exact forms are
/// d_X-exact-closed, closed forms are d_X-closed, and L_X maps exact onto
/// d_X-exact constructively (d_X b = L_X(d b)).
fn check_inclusion_chain(c: &mut Ctx) -> Result<(), String> {
    let x = c.x();
    let b = c.form(cycle_degree(c.case, 0, c.top() - 1));
    let db = b.d();
    zero(&d_x(&x, &db), "d_X on an exact form")?;
    zero(&l_x(&x, &db).d(), "d L_X on an exact form")?;
    eq(&d_x(&x, &b), &l_x(&x, &db), "d_X b = L_X(d b)")
}

/// Both twisted operators commute with the Lie derivative along a
/// locally-Hamiltonian dynamics.
fn check_dynamics_commutation(c: &mut Ctx) -> Result<(), String> {
    let (_, gamma) = gen::hamiltonian_field(c.rng, c.space, c.coeff_deg.min(3));
    let omega = DiffForm::canonical_symplectic(c.space);
    zero(&omega.lie_derive(&gamma), "L_Gamma omega for a Hamiltonian field")?;
    let ctx = TwistedContext::canonical(gamma.clone());
    let k = cycle_degree(c.case, 1, c.top());
    let a = c.form(k);
    eq(
        &ctx.d_gamma(&a.lie_derive(&gamma)),
        &ctx.d_gamma(&a).lie_derive(&gamma),
        "L_Gamma d_Gamma = d_Gamma L_Gamma",
    )?;
    eq(
        &ctx.del_gamma(&a.lie_derive(&gamma)).map_err(|e| e.to_string())?,
        &ctx.del_gamma(&a).map_err(|e| e.to_string())?.lie_derive(&gamma),
        "L_Gamma del_Gamma = del_Gamma L_Gamma",
    )
}

const CHECKS: &[(&str, Check)] = &[
    ("d_X . d_X = 0", check_dx_squared),
    ("d . d_X = d_X . d = 0", check_d_dx_zero),
    ("d_X . L_X = L_X . d_X", check_dx_commutes_lx),
    ("d_X . i(X) + i(X) . d_X = L_X^2", check_dx_ix_homotopy),
    ("d_X product rule", check_dx_product_rule),
    ("del_X . del_X = 0", check_delx_squared),
    ("i(X) . del_X = del_X . i(X) = 0", check_ix_delx_zero),
    ("del_X . L_X = L_X . del_X", check_delx_commutes_lx),
    ("del_X . d = i(X) . d_X", check_delx_d_eq_ix_dx),
    ("d . del_X = d_X . i(X)", check_d_delx_eq_dx_ix),
    ("del_X . d + d . del_X = L_X^2", check_delx_d_homotopy),
    ("del_X . d_X + d_X . del_X = L_X^3", check_delx_dx_homotopy),
    ("del_X product rule", check_delx_product_rule),
    ("inclusion chain B_X < B < Z < Z_X", check_inclusion_chain),
    ("L_Gamma commutes with d_Gamma and del_Gamma", check_dynamics_commutation),
];

/// Runs every identity on `cases` seeded instances per dimension in `dims`
/// (each entry is 2n). Coefficient degrees stay <= 3.
pub fn run_identity_suite(seed: u64, cases: usize, dims: &[usize]) -> SuiteReport {
    let mut identities = Vec::new();
    for (idx, (name, check)) in CHECKS.iter().enumerate() {
        let mut failures = Vec::new();
        let mut total = 0usize;
        for &dim in dims {
            assert!(dim >= 2 && dim % 2 == 0, "dims are 2n");
            let space = PhaseSpace::standard(dim / 2);
            let mut rng = gen::rng(seed, ((idx as u64) << 32) | dim as u64);
            for case in 0..cases {
                // Larger spaces use lower-degree fields to keep the chains
                // L_X^3 and the product rules tractable; all degrees <= 3.
                let (x_deg, coeff_deg) = if dim <= 2 {
                    (3, 3)
                } else if case % 2 == 0 {
                    (2, 3)
                } else {
                    (2, 2)
                };
                let mut ctx = Ctx { rng: &mut rng, space: &space, x_deg, coeff_deg, case };
                if let Err(msg) = check(&mut ctx) {
                    failures.push(format!("dim 2n={dim}, case {case}: {msg}"));
                }
                total += 1;
            }
        }
        identities.push(IdentityReport { name, cases: total, failures });
    }
    SuiteReport { seed, cases_per_dim: cases, dims: dims.to_vec(), identities }
}
