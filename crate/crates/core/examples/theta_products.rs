//! Theta brackets: quasi-periodic normalization, the paren/bracket
//! conversion, the shorthand notation, and f(a, b) as sum and product.

use partition_theta::notation::{parse_equation, parse_monomial, render_combination};
use partition_theta::theta::{
    normalize_atom, paren_to_bracket, ramanujan_f_product, ramanujan_f_sum, FMono, ThetaAtom,
};

fn main() {
    // [q^13 : q^10] = -q^-3 [q^3 : q^10]
    let (sign, shift, r) = normalize_atom(13, 10).unwrap();
    println!(
        "[13:10] = {}q^{shift} [{r}:10]",
        if sign < 0 { "-" } else { "" }
    );

    let order = 40;
    let paren = ThetaAtom::paren(2, 5).series(order).unwrap();
    let converted = paren_to_bracket(2, 5).unwrap();
    println!("(2:5) = {converted}");
    assert_eq!(paren, converted.series(order).unwrap());

    let m = parse_monomial("-q^3 [2,3,6,17:42]").unwrap();
    println!("parsed {m}; first terms {}", m.series(12).unwrap());

    let eq = parse_equation("[5,6,9,14:42] - [3,8,11,12:42] = q^3 [2,3,6,17:42]").unwrap();
    println!("{}", render_combination(&eq));

    // Jacobi triple product: f(-q, -q^2) is Euler's product.
    let (a, b) = (FMono::neg_q(1), FMono::neg_q(2));
    let sum = ramanujan_f_sum(a, b, 60).unwrap();
    let product = ramanujan_f_product(a, b, 60).unwrap();
    assert_eq!(sum, product);
    println!("f(-q,-q^2) = {}", sum.truncate(15));
}
