//! Canonical basis of one weight space: transition matrix to the PBW
//! basis and the canonical elements as word combinations.
//!
//! `cargo run --release --example basis_table -- A2 2,1`

use uqbasis::canonical::{label_key, CanonicalBasis};
use uqbasis::quiver::WeightVector;

fn main() -> uqbasis::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ty = args.first().map_or("A2", String::as_str);
    let nu: Vec<i64> = args.get(1).map_or("1,1", String::as_str).split(',').map(|x| x.parse().unwrap()).collect();
    let cb = CanonicalBasis::preset(ty)?;
    let nu = WeightVector(nu);
    let t = cb.table(&nu)?;
    println!("{ty}, i0 = {}, weight {nu:?}", cb.word());
    for (s, c) in t.indices.iter().enumerate() {
        let row: Vec<String> = (0..t.indices.len()).map(|r| t.kappa[r][s].to_string()).collect();
        println!("  b({}) = [{}] in L-coordinates", label_key(c), row.join(", "));
        println!("         = {:?}", cb.canonical_word_element(c)?);
    }
    Ok(())
}
