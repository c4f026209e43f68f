//! Small named structures used throughout the tests and the CLI.

use super::augmented::{conjugation_subrack_of, AugmentedRack};
use super::group::FiniteGroup;

pub const FIXTURE_NAMES: [&str; 4] = ["T", "C2", "R3S3", "Q5"];

/// Three points, `G = Z/2` acting trivially, `ν ≡ e`, `ρ = id`.
pub fn trivial() -> AugmentedRack {
    AugmentedRack::new(
        FiniteGroup::cyclic(2),
        vec![vec![0, 0], vec![1, 1], vec![2, 2]],
        vec![0, 0, 0],
        Some(vec![0, 1, 2]),
    )
    .expect("trivial fixture")
}

/// `X = Z/2`, `G = Z/2`, `x·g = x + g`, `ν ≡ 1`, `ρ = id`; `x*y = x + 1`.
pub fn c2() -> AugmentedRack {
    AugmentedRack::new(
        FiniteGroup::cyclic(2),
        vec![vec![0, 1], vec![1, 0]],
        vec![1, 1],
        Some(vec![0, 1]),
    )
    .expect("C2 fixture")
}

/// Transpositions of `S_3` under conjugation.
pub fn r3s3() -> AugmentedRack {
    let s3 = FiniteGroup::symmetric(3);
    conjugation_subrack_of(&s3, &[1]).expect("R3S3 fixture")
}

/// Transpositions and 3-cycles of `S_3`, `ρ` = inversion.
pub fn q5() -> AugmentedRack {
    let s3 = FiniteGroup::symmetric(3);
    conjugation_subrack_of(&s3, &[1, 3]).expect("Q5 fixture")
}

pub fn fixture(name: &str) -> Option<AugmentedRack> {
    match name.to_ascii_uppercase().as_str() {
        "T" | "TRIVIAL" => Some(trivial()),
        "C2" => Some(c2()),
        "R3S3" => Some(r3s3()),
        "Q5" => Some(q5()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_connected, is_quandle, validate_augmented_rack};

    #[test]
    fn fixtures_validate() {
        for name in FIXTURE_NAMES {
            let x = fixture(name).unwrap();
            assert!(validate_augmented_rack(&x.to_data()).unwrap().is_ok(), "{name}");
        }
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(trivial().size(), 3);
        assert_eq!(c2().size(), 2);
        assert_eq!(r3s3().size(), 3);
        assert_eq!(q5().size(), 5);
        assert!(!is_quandle(c2().rack()));
        assert!(is_quandle(r3s3().rack()));
        assert!(is_connected(r3s3().rack()));
        assert!(!is_connected(q5().rack()));
        assert!(!is_connected(trivial().rack()));
    }

    #[test]
    fn r3s3_is_dihedral() {
        let x = r3s3();
        for a in 0..3 {
            for b in 0..3 {
                let expected = if a == b { a } else { 3 - a - b };
                assert_eq!(x.op(a, b), expected);
            }
        }
    }
}
