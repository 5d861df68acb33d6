use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::{induced, wall, LabeledGraph};

/// Subdivided `t x t` wall of girth `8k - 2` cut out of the `kt x kt` wall.
///
/// Every `k`-th row is kept as a row of the small wall. Each vertical edge of
/// the small wall becomes a staircase that climbs the `k` rows above its
/// lower end, stepping right once per row it crosses. Everything else is
/// deleted, so each brick of the result has two rows of length `2k` and two
/// staircases of length `2k - 1`. With `k = 1` nothing is deleted.
pub fn wall_surgery(k: usize, t: usize, caps: &Caps) -> Result<LabeledGraph> {
    if k == 0 || t == 0 {
        return Err(Error::invalid("wall surgery needs k >= 1 and t >= 1"));
    }
    let n = k
        .checked_mul(t)
        .ok_or_else(|| Error::limit("wall vertices", usize::MAX, caps.wall_vertices))?;
    let big = wall(n, n, caps)?;
    let id = |x: usize, y: usize| y * 2 * n + x;
    let mut keep = Vec::new();
    for row in 0..t {
        let y = row * k;
        // the small wall's vertex in column c sits at k*c, shifted to the top
        // of its staircase when the vertical edge comes from below
        let column = |c: usize| {
            if row > 0 && (c + row) % 2 == 1 {
                k * c + k - 1
            } else {
                k * c
            }
        };
        keep.extend((column(0)..=column(2 * t - 1)).map(|x| id(x, y)));
        if row + 1 == t {
            continue;
        }
        for c in (0..2 * t).filter(|c| (c + row) % 2 == 0) {
            let x0 = k * c;
            for j in 1..k {
                keep.push(id(x0 + j - 1, y + j));
                keep.push(id(x0 + j, y + j));
            }
        }
    }
    keep.sort_unstable();
    keep.dedup();
    induced(&big, &keep)
}
