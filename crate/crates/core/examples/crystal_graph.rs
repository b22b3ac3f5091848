//! The crystal graph of B(infinity) up to a height, as edges `b -i-> f_i b`,
//! with epsilon and the star involution for each vertex.
//!
//! `cargo run --release --example crystal_graph -- A2 3`

use uqbasis::canonical::{label_key, CanonicalBasis};

fn main() -> uqbasis::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ty = args.first().map_or("A2", String::as_str);
    let h: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cb = CanonicalBasis::preset(ty)?;
    let vs: Vec<_> = cb.datum().vertices().collect();
    for c in cb.labels_up_to(h - 1) {
        let eps: Vec<u32> = vs.iter().map(|&i| cb.epsilon(i, &c)).collect::<uqbasis::Result<_>>()?;
        let edges: Vec<String> =
            vs.iter().map(|&i| Ok(format!("-{i}-> {}", label_key(&cb.f_tilde(i, &c)?)))).collect::<uqbasis::Result<_>>()?;
        println!("{:>10}  eps {:?}  star {:>10}  {}", label_key(&c), eps, label_key(&cb.star_label(&c)?), edges.join("  "));
    }
    Ok(())
}
