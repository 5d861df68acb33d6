use serde::{Deserialize, Serialize};

use super::{FiniteWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestednessViolation {
    pub m: Letter,
    pub x: Letter,
    pub y: Letter,
    pub z: Letter,
    /// Absolute positions of the offending factor, inclusive.
    pub interval: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestednessReport {
    pub nested: bool,
    pub violation: Option<NestednessViolation>,
}

/// Checks the nesting condition for every quadruple `m < x < y < z` of letters
/// `<= max_letter` that occur in `word`: each factor running from an `x` to a
/// `z` (either direction) must contain `m` or `y`.
///
/// Only minimal factors (no interior `x` or `z`) are examined, since any
/// violating factor contains a minimal one. The reported violation is the
/// lexicographically least `(m, x, y, z)`, then the leftmost factor.
pub fn is_nested(word: &FiniteWord, max_letter: Letter) -> NestednessReport {
    let max = max_letter as usize;
    // occurrences[l] = sorted 1-based indices of letter l
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
    for (i, &l) in word.letters.iter().enumerate() {
        if (l as usize) <= max {
            occurrences[l as usize].push(i + 1);
        }
    }
    let present: Vec<Letter> = (1..=max_letter)
        .filter(|&l| !occurrences[l as usize].is_empty())
        .collect();

    let occurs_inside = |letter: Letter, lo: usize, hi: usize| {
        let occ = &occurrences[letter as usize];
        let first = occ.partition_point(|&p| p <= lo);
        first < occ.len() && occ[first] < hi
    };

    let n = present.len();
    for a in 0..n {
        let m = present[a];
        for b in a + 1..n {
            let x = present[b];
            for c in b + 1..n {
                let y = present[c];
                for &z in &present[c + 1..] {
                    let factors = minimal_factors(&occurrences[x as usize], &occurrences[z as usize]);
                    for (lo, hi) in factors {
                        if !occurs_inside(m, lo, hi) && !occurs_inside(y, lo, hi) {
                            return NestednessReport {
                                nested: false,
                                violation: Some(NestednessViolation {
                                    m,
                                    x,
                                    y,
                                    z,
                                    interval: [word.absolute_position(lo), word.absolute_position(hi)],
                                }),
                            };
                        }
                    }
                }
            }
        }
    }
    NestednessReport {
        nested: true,
        violation: None,
    }
}

// Adjacent pairs in the merged occurrence list whose letters differ, in
// left-to-right order.
fn minimal_factors(xs: &[usize], zs: &[usize]) -> Vec<(usize, usize)> {
    let mut merged: Vec<(usize, bool)> = xs.iter().map(|&p| (p, false)).chain(zs.iter().map(|&p| (p, true))).collect();
    merged.sort_unstable();
    merged
        .windows(2)
        .filter(|w| w[0].1 != w[1].1)
        .map(|w| (w[0].0, w[1].0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::words::{prefix, InfiniteWordSpec};

    // Direct reading of the definition: every factor (not just minimal ones)
    // for every quadruple.
    fn nested_by_definition(letters: &[Letter], max_letter: Letter) -> bool {
        let n = letters.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (letters[i].min(letters[j]), letters[i].max(letters[j]));
                if a == b || b > max_letter {
                    continue;
                }
                let inside = &letters[i + 1..j];
                for m in 1..a {
                    for y in a + 1..b {
                        if !letters.contains(&m) || !letters.contains(&y) {
                            continue;
                        }
                        if !inside.contains(&m) && !inside.contains(&y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn periodic_counterexample() {
        let spec = InfiniteWordSpec::ExplicitPeriodic(vec![1, 2, 4, 3]);
        let w = prefix(&spec, 12, &Caps::default()).unwrap();
        let report = is_nested(&w, 4);
        assert!(!report.nested);
        assert_eq!(
            report.violation,
            Some(NestednessViolation {
                m: 1,
                x: 2,
                y: 3,
                z: 4,
                interval: [2, 3]
            })
        );
    }

    #[test]
    fn empty_is_nested() {
        assert!(is_nested(&FiniteWord::default(), 10).nested);
    }

    #[test]
    fn arithmetic_and_binary_power_words_are_nested() {
        for spec in [InfiniteWordSpec::Arithmetic, InfiniteWordSpec::Power(2)] {
            let w = prefix(&spec, 2000, &Caps::default()).unwrap();
            assert!(is_nested(&w, 8).nested, "{spec}");
        }
    }

    // `kappa(3) = 1 2 3 1 2 4 ...` has the factor `2 4` at positions 5..6,
    // and `eta = 1 2 3 1 4 1 2 5 ...` has `2 5` at 7..8; neither contains
    // `1` or the letter in between.
    #[test]
    fn other_families_have_short_violations() {
        let cases = [
            (InfiniteWordSpec::Power(3), (1, 2, 3, 4), [5, 6]),
            (InfiniteWordSpec::Power(4), (1, 2, 4, 5), [6, 8]),
            (InfiniteWordSpec::Power(5), (1, 2, 5, 6), [7, 10]),
            (InfiniteWordSpec::FibonacciType, (1, 2, 3, 5), [7, 8]),
        ];
        for (spec, (m, x, y, z), interval) in cases {
            let w = prefix(&spec, 2000, &Caps::default()).unwrap();
            let report = is_nested(&w, 8);
            assert_eq!(report.violation, Some(NestednessViolation { m, x, y, z, interval }), "{spec}");
        }
    }

    #[test]
    fn json_shape() {
        let w: FiniteWord = "1 2 4 3".parse().unwrap();
        let json = serde_json::to_value(is_nested(&w, 4)).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"nested": false, "violation": {"m":1,"x":2,"y":3,"z":4,"interval":[2,3]}})
        );
        let ok = serde_json::to_value(is_nested(&FiniteWord::default(), 4)).unwrap();
        assert_eq!(ok, serde_json::json!({"nested": true, "violation": null}));
    }

    #[test]
    fn agrees_with_definition_on_random_words() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        runner
            .run(&prop::collection::vec(1u32..=6, 0..24), |letters| {
                let w = FiniteWord::new(letters.clone());
                let report = is_nested(&w, 6);
                prop_assert_eq!(report.nested, nested_by_definition(&letters, 6));
                if let Some(v) = report.violation {
                    let [lo, hi] = v.interval;
                    let ends = [letters[lo - 1], letters[hi - 1]];
                    prop_assert!(ends == [v.x, v.z] || ends == [v.z, v.x]);
                    let inside = &letters[lo..hi - 1];
                    prop_assert!(!inside.contains(&v.m) && !inside.contains(&v.y));
                }
                Ok(())
            })
            .unwrap();
    }
}
