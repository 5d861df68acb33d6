use super::{InfiniteWordSpec, Letter};
use crate::error::{Error, Result};

/// Greedy left-to-right scan for consecutive disjoint intervals: the first is
/// the first occurrence of `letters[0]`, and interval `k` is the shortest
/// factor starting right after interval `k - 1` that contains all of
/// `letters[0..=k]`.
///
/// Returns inclusive `(start, end)` pairs. Fails with [`Error::SearchBound`]
/// naming the 1-based index of the first interval that does not close by
/// position `bound`.
pub fn find_increasing_intervals(
    spec: &InfiniteWordSpec,
    letters: &[Letter],
    bound: usize,
) -> Result<Vec<(usize, usize)>> {
    spec.validate()?;
    if letters.is_empty() {
        return Err(Error::invalid("at least one letter is required"));
    }
    if letters.windows(2).any(|w| w[0] >= w[1]) || letters[0] == 0 {
        return Err(Error::invalid("letters must be positive and strictly increasing"));
    }

    let mut out = Vec::with_capacity(letters.len());
    let mut pos = 1;
    for k in 0..letters.len() {
        let wanted = if k == 0 { &letters[..1] } else { &letters[..=k] };
        let mut seen = vec![false; wanted.len()];
        let mut missing = wanted.len();
        // the first interval is a single letter, so it starts where it is found
        let mut start = pos;
        loop {
            if pos > bound {
                return Err(Error::SearchBound { k: k + 1, bound });
            }
            let l = spec.letter_at(pos)?;
            if let Ok(idx) = wanted.binary_search(&l) {
                if !seen[idx] {
                    seen[idx] = true;
                    missing -= 1;
                }
            } else if k == 0 {
                start = pos + 1;
            }
            pos += 1;
            if missing == 0 {
                break;
            }
        }
        out.push((start, pos - 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_one_to_four() {
        let got = find_increasing_intervals(&InfiniteWordSpec::Arithmetic, &[1, 2, 3, 4], 50).unwrap();
        assert_eq!(got, vec![(1, 1), (2, 3), (4, 6), (7, 10)]);
        let single = find_increasing_intervals(&InfiniteWordSpec::Arithmetic, &[1], 10).unwrap();
        assert_eq!(single, vec![(1, 1)]);
    }

    #[test]
    fn first_interval_skips_to_first_occurrence() {
        let got = find_increasing_intervals(&InfiniteWordSpec::Power(2), &[3, 4], 100).unwrap();
        assert_eq!(got[0], (4, 4));
    }

    #[test]
    fn intervals_cover_their_letters() {
        for spec in [
            InfiniteWordSpec::Arithmetic,
            InfiniteWordSpec::Power(2),
            InfiniteWordSpec::Power(3),
            InfiniteWordSpec::FibonacciType,
        ] {
            let letters: Vec<Letter> = (1..=6).collect();
            let got = find_increasing_intervals(&spec, &letters, 100_000).unwrap();
            let mut prev_end = 0;
            for (k, &(a, b)) in got.iter().enumerate() {
                assert!(a > prev_end && a <= b);
                prev_end = b;
                let factor: Vec<Letter> = (a..=b).map(|p| spec.letter_at(p).unwrap()).collect();
                for l in &letters[..=k] {
                    assert!(factor.contains(l), "{spec} interval {k} lacks {l}");
                }
            }
        }
    }

    #[test]
    fn bound_failure_names_the_interval() {
        match find_increasing_intervals(&InfiniteWordSpec::Arithmetic, &[1, 2, 3, 4], 8) {
            Err(Error::SearchBound { k: 4, bound: 8 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(find_increasing_intervals(&InfiniteWordSpec::Arithmetic, &[2, 1], 8).is_err());
        assert!(find_increasing_intervals(&InfiniteWordSpec::Arithmetic, &[], 8).is_err());
    }
}
