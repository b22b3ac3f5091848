//! Finds a rigid collection whose summands carry the crystal labels of the
//! initial quantum seed, by brute force over small modules. The output is
//! the `rigid_collection` field of a preset file.
//!
//! `cargo run --release --example preset_collections -- A3`

use uqbasis::canonical::{label_key, CanonicalBasis};
use uqbasis::cluster::QuantumSeed;
use uqbasis::preproj::{indecomposables, RigidCollection, Summand};
use uqbasis::quiver::{Orientation, WeightVector};

fn main() -> uqbasis::Result<()> {
    let ty = std::env::args().nth(1).unwrap_or_else(|| "A2".into());
    let cb = CanonicalBasis::preset(&ty)?;
    let d = cb.datum().clone();
    let o = Orientation::standard(&d);
    let seed = QuantumSeed::initial(&cb, &cb.word().clone())?;
    let mut bound = WeightVector::zero(d.rank());
    for l in &seed.labels {
        let w = cb.weight_of(l);
        bound = WeightVector(bound.0.iter().zip(&w.0).map(|(a, b)| *a.max(b)).collect());
    }
    let modules = indecomposables(&d, &o, &bound, &[-1, 0, 1])?;
    let mut summands = Vec::new();
    for (k, l) in seed.labels.iter().enumerate() {
        let mut found = None;
        for m in &modules {
            if m.dim() == &cb.weight_of(l) && m.is_rigid()? && &m.crystal_label(&cb)? == l {
                found = Some(m.clone());
                break;
            }
        }
        let Some(m) = found else {
            eprintln!("no rigid module with label {}", label_key(l));
            std::process::exit(1);
        };
        summands.push(Summand { label: seed.tags[k].clone(), module: m, frozen: seed.frozen[k] });
    }
    let t = RigidCollection::new(&d, &o, summands)?;
    println!("{}", serde_json::to_string(&t.to_files())?);
    Ok(())
}
