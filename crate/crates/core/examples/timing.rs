use std::time::Instant;
fn main() {
    let t = Instant::now();
    let r = canonoid::run_identity_suite(7, 100, &[2, 4]);
    println!("full suite (100 cases, dims 2&4): {:?} passed={}", t.elapsed(), r.passed());
}
