//! B(w) for every Weyl group element, by PBW monomials and by the crystal
//! recursion through Saito reflections.
//!
//! `cargo run --release --example bw_routes -- A3 4`

use uqbasis::canonical::CanonicalBasis;

fn main() -> uqbasis::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ty = args.first().map_or("A2", String::as_str);
    let h: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let cb = CanonicalBasis::preset(ty)?;
    for w in cb.datum().weyl_elements() {
        let a = cb.bw_members_pbw(&w, h)?;
        let b = cb.bw_members_crystal(&w, h)?;
        println!("w = [{w}]  |B(w)| up to height {h}: {}  routes agree: {}", a.len(), a == b);
    }
    Ok(())
}
