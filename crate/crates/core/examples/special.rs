//! Identities that need more than a single theta relation: the
//! Rogers–Ramanujan-function pair and the dissection chain for the
//! modulus-72 shiftless identity.

use partition_theta::partitions::{rogers_ramanujan_check, verify_theorem_72_2};

fn main() {
    for report in [rogers_ramanujan_check(1000), verify_theorem_72_2(600)] {
        println!(
            "order {}: {}",
            report.order,
            if report.pass { "pass" } else { "FAIL" }
        );
        for item in &report.items {
            println!(
                "    {:<10} {}",
                item.name,
                if item.pass { "ok" } else { "fails" }
            );
        }
    }
}
