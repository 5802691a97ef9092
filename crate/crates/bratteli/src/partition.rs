//! Integer partitions as weakly decreasing part lists.

use std::cmp::Ordering;

pub type Partition = Vec<u32>;

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

pub fn is_partition(p: &[u32]) -> bool {
    p.iter().all(|&v| v > 0) && p.windows(2).all(|w| w[0] >= w[1])
}

/// Canonical order used for vertex ids: larger size first, then
/// decreasing lexicographic order, so (2) comes before (1,1).
pub fn canonical_cmp(a: &[u32], b: &[u32]) -> Ordering {
    size(b).cmp(&size(a)).then_with(|| b.cmp(a))
}

/// All partitions of n in decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions obtained by adding one box, in canonical order.
pub fn add_box(p: &[u32]) -> Vec<Partition> {
    let mut out = Vec::new();
    for r in 0..=p.len() {
        let row_len = p.get(r).copied().unwrap_or(0);
        let above = if r == 0 { u32::MAX } else { p[r - 1] };
        if row_len < above {
            let mut q = p.to_vec();
            if r == p.len() {
                q.push(1);
            } else {
                q[r] += 1;
            }
            out.push(q);
        }
    }
    out.sort_by(|a, b| canonical_cmp(a, b));
    out
}

/// Partitions obtained by removing one box.
pub fn remove_box(p: &[u32]) -> Vec<Partition> {
    let mut out = Vec::new();
    for r in 0..p.len() {
        let below = p.get(r + 1).copied().unwrap_or(0);
        if p[r] > below {
            let mut q = p.to_vec();
            q[r] -= 1;
            if q[r] == 0 {
                q.pop();
            }
            out.push(q);
        }
    }
    out.sort_by(|a, b| canonical_cmp(a, b));
    out
}

/// The single box in `big` that is not in `small` (which must be `big` minus a box),
/// as (row, column), 0-based.
pub fn added_box(small: &[u32], big: &[u32]) -> Option<(usize, usize)> {
    if size(big) != size(small) + 1 {
        return None;
    }
    for r in 0..big.len() {
        let s = small.get(r).copied().unwrap_or(0);
        if big[r] == s + 1 {
            return Some((r, s as usize));
        }
        if big[r] != s {
            return None;
        }
    }
    None
}

/// Content (column − row) of a box.
pub fn content(cell: (usize, usize)) -> i64 {
    cell.1 as i64 - cell.0 as i64
}

/// Number of removable corners.
pub fn jump(p: &[u32]) -> usize {
    remove_box(p).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn boxes() {
        assert_eq!(add_box(&[2, 1]), vec![vec![3, 1], vec![2, 2], vec![2, 1, 1]]);
        assert_eq!(remove_box(&[2, 1]), vec![vec![2], vec![1, 1]]);
        assert_eq!(added_box(&[2], &[2, 1]), Some((1, 0)));
        assert_eq!(jump(&[2, 1]), 2);
        assert_eq!(jump(&[4]), 1);
        assert_eq!(jump(&[]), 0);
    }
}
