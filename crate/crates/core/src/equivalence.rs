//! The action of the unit group `U(M)` on partition identities.
//!
//! Replacing every residue `r` by `α·r mod M` (and folding `r ↦ M - r`) maps
//! an identity to another identity, possibly with a different shift. The new
//! relation is found empirically and re-verified.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{infer_relation, verify_identity, PartitionIdentity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitAction {
    alpha: i64,
    modulus: i64,
}

impl UnitAction {
    pub fn new(alpha: i64, modulus: i64) -> Result<UnitAction> {
        let alpha_red = alpha.rem_euclid(modulus.max(1));
        if modulus < 2 || alpha_red.gcd(&modulus) != 1 {
            return Err(Error::InvalidParams(format!(
                "{alpha} is not a unit modulo {modulus}"
            )));
        }
        Ok(UnitAction {
            alpha: alpha_red,
            modulus,
        })
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn compose(&self, other: &UnitAction) -> UnitAction {
        UnitAction {
            alpha: (self.alpha * other.alpha).rem_euclid(self.modulus),
            modulus: self.modulus,
        }
    }

    /// `fold(α·r)` for each residue, sorted.
    pub fn apply_set(&self, set: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = set
            .iter()
            .map(|&r| fold(self.alpha * r, self.modulus))
            .collect();
        out.sort_unstable();
        out
    }
}

/// `min(r mod M, -r mod M)`.
pub fn fold(r: i64, modulus: i64) -> i64 {
    let r = r.rem_euclid(modulus);
    r.min(modulus - r)
}

/// Units `α ≤ M/2`; `α` and `M - α` act identically on folded sets.
pub fn unit_representatives(modulus: i64) -> Vec<i64> {
    (1..=modulus / 2).filter(|a| a.gcd(&modulus) == 1).collect()
}

/// Maps `id` under `α`, orienting the image so that `S` is the side with the
/// unshifted (shifted case) or larger-at-`a` (shiftless case) series.
pub fn act(u: &UnitAction, id: &PartitionIdentity, order: i64) -> Result<PartitionIdentity> {
    if u.modulus != id.modulus() {
        return Err(Error::InvalidParams(format!(
            "action modulo {} applied to an identity modulo {}",
            u.modulus,
            id.modulus()
        )));
    }
    let not_identity = |reason: String| Error::NotAnIdentity {
        alpha: u.alpha,
        reason,
    };
    let s = u.apply_set(id.s());
    let t = u.apply_set(id.t());
    if s.windows(2).any(|w| w[0] == w[1]) || t.windows(2).any(|w| w[0] == w[1]) {
        return Err(not_identity("image sets have repeated residues".into()));
    }
    let m = id.modulus();
    let (s, t, (kind, a)) = if let Some(rel) = infer_relation(&s, &t, m, order) {
        (s, t, rel)
    } else if let Some(rel) = infer_relation(&t, &s, m, order) {
        (t, s, rel)
    } else {
        return Err(not_identity(
            "no shifted or shiftless relation holds".into(),
        ));
    };
    let image =
        PartitionIdentity::new(m, s, t, kind, a).map_err(|e| not_identity(e.to_string()))?;
    let report = verify_identity(&image, order)?;
    if !report.pass {
        return Err(not_identity(format!(
            "verification failed at n = {:?}",
            report.first_failure
        )));
    }
    Ok(image)
}

/// All images of `id`, sorted and deduplicated.
pub fn orbit(id: &PartitionIdentity, order: i64) -> Result<Vec<PartitionIdentity>> {
    let m = id.modulus();
    let mut images = unit_representatives(m)
        .par_iter()
        .map(|&alpha| act(&UnitAction::new(alpha, m)?, id, order))
        .collect::<Result<Vec<_>>>()?;
    images.sort();
    images.dedup();
    Ok(images)
}

/// Splits identities of one modulus into orbit classes. Classes list their
/// input members in sorted order and are ordered by their least member.
pub fn classify(ids: &[PartitionIdentity], order: i64) -> Result<Vec<Vec<PartitionIdentity>>> {
    if let Some(first) = ids.first() {
        if ids.iter().any(|i| i.modulus() != first.modulus()) {
            return Err(Error::InvalidParams(
                "classify needs a single modulus".into(),
            ));
        }
    }
    let orbits = ids
        .par_iter()
        .map(|id| orbit(id, order))
        .collect::<Result<Vec<_>>>()?;
    // Orbits of a group action are equal or disjoint, so the least element
    // of an orbit names its class.
    let mut classes: BTreeMap<PartitionIdentity, Vec<PartitionIdentity>> = BTreeMap::new();
    for (id, orb) in ids.iter().zip(orbits) {
        classes.entry(orb[0].clone()).or_default().push(id.clone());
    }
    let mut out: Vec<Vec<PartitionIdentity>> = classes
        .into_values()
        .map(|mut members| {
            members.sort();
            members.dedup();
            members
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Kind;

    fn thm_32_1() -> PartitionIdentity {
        PartitionIdentity::new(
            32,
            vec![1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15],
            vec![1, 2, 3, 5, 7, 8, 9, 11, 12, 13, 14, 15],
            Kind::Shifted,
            1,
        )
        .unwrap()
    }

    #[test]
    fn trivial_actions() {
        let id = thm_32_1();
        for alpha in [1, 31] {
            let u = UnitAction::new(alpha, 32).unwrap();
            assert_eq!(act(&u, &id, 300).unwrap(), id);
        }
        assert!(UnitAction::new(2, 32).is_err());
    }

    #[test]
    fn alpha_three() {
        let id = thm_32_1();
        let image = act(&UnitAction::new(3, 32).unwrap(), &id, 300).unwrap();
        assert!(verify_identity(&image, 300).unwrap().pass);
        let orb = orbit(&id, 300).unwrap();
        assert!(orb.len() <= 8);
        assert!(orb.contains(&id));
        assert!(orb.contains(&image));
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold(33, 32), 1);
        assert_eq!(fold(-5, 32), 5);
        assert_eq!(fold(16, 32), 16);
        assert_eq!(unit_representatives(32), vec![1, 3, 5, 7, 9, 11, 13, 15]);
    }
}
