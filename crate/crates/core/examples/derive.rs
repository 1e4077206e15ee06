//! Deriving partition identities from five exponents at base n.
//!
//! ```text
//! cargo run --release --example derive -- 1,2,4,12,13 16
//! ```

use partition_theta::jacobi::{derive_identity, four2_terms, FourParams};
use partition_theta::partitions::verify_identity;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (exps, n) = match args.as_slice() {
        [p, n] => (
            p.split(',')
                .map(|x| x.trim().parse().unwrap())
                .collect::<Vec<i64>>(),
            n.parse().unwrap(),
        ),
        _ => (vec![1, 2, 4, 12, 13], 16),
    };
    let p = FourParams::from_slice(&exps, n).expect("five positive coprime exponents");

    let (t1, t2) = four2_terms(&p).expect("admissible parameters");
    println!(
        "T1 before cancellation: {} atoms over {} atoms",
        t1.numerator.len(),
        t1.denominator.len()
    );
    println!(
        "T2 before cancellation: {} atoms over {} atoms",
        t2.numerator.len(),
        t2.denominator.len()
    );

    match derive_identity(&p) {
        Ok(d) => {
            println!("T1 = {}", d.terms.0);
            println!("T2 = {}", d.terms.1);
            println!("{}", d.identity);
            let report = verify_identity(&d.identity, 500).unwrap();
            println!("verified to n = 500: {}", report.pass);
        }
        Err(reason) => println!("{p}: no partition identity ({reason})"),
    }
}
