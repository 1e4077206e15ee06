//! Truncated q-series: products, inverses and exact big coefficients.

use num_bigint::BigInt;
use partition_theta::Series;

fn main() {
    let order = 30;
    // Euler's product (q; q)_∞ and its pentagonal-number sparsity.
    let euler = Series::pochhammer(1, 1, 1, order).unwrap();
    println!("(q;q)_inf = {euler}");

    // Its reciprocal generates unrestricted partitions.
    let p = euler.invert().unwrap();
    println!("p(0..=10) = {:?}", p.coeff_range(0, 10).unwrap());
    assert_eq!(&euler * &p, Series::one(order));

    // Coefficients are arbitrary precision: p(1000) has 32 digits.
    let big = Series::pochhammer(1, 1, 1, 1000).unwrap().invert().unwrap();
    let p1000 = big.coeff(1000).unwrap();
    assert_eq!(
        p1000,
        "24061467864032622473692149727991"
            .parse::<BigInt>()
            .unwrap()
    );
    println!("p(1000) = {p1000}");

    // Partitions into parts ≡ ±1 (mod 5), the first Rogers–Ramanujan product.
    let g = Series::residue_product(&[1], 5, order).unwrap();
    println!("G(q) = {g}");

    // Laurent series: q^-2 (1 + q) inverted.
    let laurent = Series::from_i64(-2, &[1, 1], order);
    println!(
        "1 / (q^-2 + q^-1) = {}",
        laurent.invert().unwrap().truncate(8)
    );
}
