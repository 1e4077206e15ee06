//! Auxiliary four-bracket relations used in iteration proofs: instantiate,
//! normalize, compare with the printed form, and check as series.

use partition_theta::jacobi::{
    four_instance, match_up_to_scaling, quintuple_instance, verify_zero_combination, FourParams,
};
use partition_theta::notation::{parse_equation, render_combination};

fn main() {
    let cases = [
        (
            [1, 3, 6, 9, 12],
            42,
            "[5,6,9,14:42] - [3,8,11,12:42] = q^3 [2,3,6,17:42]",
        ),
        (
            [1, 5, 14, 19, 20],
            42,
            "[9,18,19,20:42] - [13,14,15,18:42] = -q^9 [4,5,6,9:42]",
        ),
        (
            [1, 7, 9, 17, 19],
            48,
            "[2,16,18,20:48] - [8,10,12,22:48] = -q^2 [6,8,10,20:48]",
        ),
    ];
    for (exps, n, printed) in cases {
        let p = FourParams::from_slice(&exps, n).unwrap();
        let inst = four_instance(&p).unwrap().zero_combination();
        let printed = parse_equation(printed).unwrap();
        let scaling = match_up_to_scaling(&printed, &inst);
        let check = verify_zero_combination(&inst, 400).unwrap();
        println!("{p}: {}", render_combination(&inst));
        println!(
            "    matches printed form up to {scaling:?}; zero to q^400: {}",
            check.pass
        );
    }

    // Quintuple product in its 15-bracket form, q -> q^9, x -> q^2.
    let qp = quintuple_instance(2, 9).unwrap();
    let check = verify_zero_combination(&qp.bracket_form.zero_combination(), 400).unwrap();
    println!(
        "{}",
        render_combination(&qp.bracket_form.zero_combination())
    );
    println!("    zero to q^400: {}", check.pass);
}
