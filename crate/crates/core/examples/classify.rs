//! Orbits of the unit group acting on the catalog, one modulus at a time.

use partition_theta::corpus::Corpus;
use partition_theta::equivalence::{act, classify, UnitAction};

fn main() {
    let corpus = Corpus::shipped();
    for m in corpus.moduli() {
        let ids: Vec<_> = corpus
            .with_modulus(m)
            .iter()
            .map(|e| e.identity().unwrap())
            .collect();
        let classes = classify(&ids, 300).unwrap();
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        println!(
            "M = {m}: {} identities, {} classes {sizes:?}",
            ids.len(),
            classes.len()
        );
    }

    let id = corpus.get("Thm-48.1-i").unwrap().identity().unwrap();
    let image = act(&UnitAction::new(5, 48).unwrap(), &id, 300).unwrap();
    println!("α = 5 on {id}\n   -> {image}");
}
