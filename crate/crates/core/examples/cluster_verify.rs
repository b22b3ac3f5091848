//! Verifies that quantum cluster monomials are dual canonical.
//!
//! `cargo run --release --example cluster_verify -- A2 2 4`

use std::time::Instant;

use uqbasis::canonical::CanonicalBasis;
use uqbasis::cluster::{verify_conjecture, VerifyConfig};

fn main() -> uqbasis::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ty = args.first().map_or("A2", String::as_str);
    let depth = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let exp = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let variables_only = args.get(3).is_some_and(|s| s == "vars");
    let cb = CanonicalBasis::preset(ty)?;
    let t = Instant::now();
    let rep = verify_conjecture(&cb, ty, &cb.word().clone(), &VerifyConfig { depth, exp_bound: exp, variables_only })?;
    let failed = rep.monomials.iter().filter(|m| m.status != "pass").count();
    println!(
        "{ty}: {} seeds, {} monomials, {} exchanges, {failed} failures, {:.1?}",
        rep.seeds.len(),
        rep.monomials.len(),
        rep.exchange_log.len(),
        t.elapsed()
    );
    for m in rep.monomials.iter().take(12) {
        println!("  {:?} -> {:?} q^{:?} {}", m.exponents, m.label, m.q_power, m.status);
    }
    Ok(())
}
