//! Mutation of the preset rigid collection at each mutable summand, with
//! the exchange modules and their crystal labels.
//!
//! `cargo run --release --example preproj_mutation -- A3`

use uqbasis::canonical::{label_key, CanonicalBasis};
use uqbasis::preproj::mutate_rigid;
use uqbasis::presets::Preset;

fn main() -> uqbasis::Result<()> {
    let ty = std::env::args().nth(1).unwrap_or_else(|| "A2".into());
    let p = Preset::load(&ty)?;
    let cb = CanonicalBasis::preset(&ty)?;
    let Some(t) = p.rigid_collection()? else {
        println!("{ty} ships no rigid collection");
        return Ok(());
    };
    for (k, s) in t.summands().iter().enumerate().filter(|(_, s)| !s.frozen) {
        let mu = mutate_rigid(&t, k)?;
        let back = mutate_rigid(&mu.collection, k)?.collection.same_up_to_iso(&t)?;
        println!(
            "mutate {} ({}): new {} dim {:?}; T' {} T'' {}; involutive {back}",
            s.label,
            label_key(&s.module.crystal_label(&cb)?),
            label_key(&mu.complement.crystal_label(&cb)?),
            mu.complement.dim(),
            label_key(&mu.t_prime.crystal_label(&cb)?),
            label_key(&mu.t_double_prime.crystal_label(&cb)?),
        );
    }
    Ok(())
}
