use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `F_k` with `F_1 = F_2 = 1`. `None` once the value leaves `u64`.
pub fn fibonacci(k: u32) -> Option<u64> {
    if k == 0 {
        return Some(0);
    }
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 1..k {
        let next = a.checked_add(b)?;
        a = b;
        b = next;
    }
    Some(b)
}

/// Zeckendorf representation over `F_2 = 1, F_3 = 2, F_4 = 3, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeckendorfRep {
    /// Strictly decreasing, pairwise non-consecutive, all `>= 2`.
    pub indices: Vec<u32>,
}

impl ZeckendorfRep {
    pub fn value(&self) -> u64 {
        self.indices
            .iter()
            .map(|&k| fibonacci(k).expect("index in range"))
            .sum()
    }

    /// Index of the smallest summand.
    pub fn lowest_index(&self) -> u32 {
        *self.indices.last().expect("non-empty representation")
    }
}

/// Greedy Zeckendorf decomposition of `n >= 1`.
pub fn zeckendorf(n: u64) -> Result<ZeckendorfRep> {
    if n == 0 {
        return Err(Error::invalid("zeckendorf is defined for n >= 1"));
    }
    let mut fibs = vec![(2u32, 1u64)];
    let mut k = 3;
    while let Some(f) = fibonacci(k) {
        if f > n {
            break;
        }
        fibs.push((k, f));
        k += 1;
    }
    let mut rest = n;
    let mut indices = Vec::new();
    for &(k, f) in fibs.iter().rev() {
        if f <= rest {
            indices.push(k);
            rest -= f;
        }
    }
    debug_assert_eq!(rest, 0);
    Ok(ZeckendorfRep { indices })
}
