//! The suffix-dominant lexicographic order on weight words.
//!
//! Weights are appended as a run proceeds, so the most recent symbol decides:
//! `b1·w1 < b2·w2` iff `w1 < w2`, or `w1 = w2` and `b1 < b2`.

use std::cmp::Ordering;

use crate::alphabet::SymbolId;
use crate::error::{Error, Result};

/// Compares two weight words of equal length, right to left by rank.
pub fn cmp_weights(left: &[SymbolId], right: &[SymbolId]) -> Result<Ordering> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    Ok(suffix_cmp(left, right))
}

/// Same order without the length check; callers guarantee equal lengths.
#[inline]
pub(crate) fn suffix_cmp(left: &[SymbolId], right: &[SymbolId]) -> Ordering {
    debug_assert_eq!(left.len(), right.len(), "weight words of unequal length");
    left.iter().rev().cmp(right.iter().rev())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A: usize = 0;
    const B: usize = 1;

    // Direct transcription of the recursive definition, used as the reference.
    fn recursive(left: &[usize], right: &[usize]) -> Ordering {
        match (left.split_last(), right.split_last()) {
            (None, None) => Ordering::Equal,
            (Some((l, lp)), Some((r, rp))) => l.cmp(r).then_with(|| recursive(lp, rp)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn worked_cases() {
        assert_eq!(cmp_weights(&[], &[]), Ok(Ordering::Equal));
        assert_eq!(cmp_weights(&[B, A], &[A, B]), Ok(Ordering::Less));
        assert_eq!(cmp_weights(&[A, A], &[A, B]), Ok(Ordering::Less));
        assert_eq!(cmp_weights(&[A, B], &[B, A]), Ok(Ordering::Greater));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(
            cmp_weights(&[A], &[A, A]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }

    fn same_len_pair(max: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
        (0..=6usize).prop_flat_map(move |n| {
            (
                prop::collection::vec(0..max, n),
                prop::collection::vec(0..max, n),
                prop::collection::vec(0..max, n),
            )
        })
    }

    proptest! {
        #[test]
        fn matches_recursive_definition((x, y, _z) in same_len_pair(3)) {
            prop_assert_eq!(cmp_weights(&x, &y).unwrap(), recursive(&x, &y));
        }

        #[test]
        fn total_order_laws((x, y, z) in same_len_pair(3)) {
            let xy = suffix_cmp(&x, &y);
            prop_assert_eq!(xy, suffix_cmp(&y, &x).reverse());
            prop_assert_eq!(xy == Ordering::Equal, x == y);
            if xy != Ordering::Greater && suffix_cmp(&y, &z) != Ordering::Greater {
                prop_assert_ne!(suffix_cmp(&x, &z), Ordering::Greater);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn appending_common_symbol_preserves_order((x, y, _z) in same_len_pair(3), w in 0..3usize) {
            let mut xw = x.clone();
            xw.push(w);
            let mut yw = y.clone();
            yw.push(w);
            prop_assert_eq!(suffix_cmp(&xw, &yw), suffix_cmp(&x, &y));
        }
    }
}
