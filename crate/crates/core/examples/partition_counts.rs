//! Counting restricted partitions, and what a broken identity looks like.

use partition_theta::partitions::{partition_counts, verify_identity, Kind, PartitionIdentity};

fn main() {
    let s = [1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15];
    let t = [1, 2, 3, 5, 7, 8, 9, 11, 12, 13, 14, 15];
    let ps = partition_counts(&s, 32, 12).unwrap();
    let pt = partition_counts(&t, 32, 12).unwrap();
    for n in 1..=12 {
        println!(
            "n = {n:>2}: p(S, n) = {:>4}   p(T, n-1) = {:>4}",
            ps[n],
            pt[n - 1]
        );
    }

    let good = PartitionIdentity::new(32, s.to_vec(), t.to_vec(), Kind::Shifted, 1).unwrap();
    println!("{}: {:?}", good, verify_identity(&good, 1000).unwrap().pass);

    // Replace 15 by 16 in T.
    let mut t2 = t.to_vec();
    t2[11] = 16;
    let bad = PartitionIdentity::new(32, s.to_vec(), t2, Kind::Shifted, 1).unwrap();
    let r = verify_identity(&bad, 1000).unwrap();
    let w = r.witness.unwrap();
    println!(
        "mutated: first failure at n = {}: p(S) = {}, p(T) = {}",
        w.n, w.p_s, w.p_t
    );
}
