//! Permutations of `0..n` in one-line notation.

use crate::error::{Error, Result};

/// `(p ∘ q)(i) = p[q[i]]`: apply `q` first.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Builds a permutation of degree `degree` from a list of cycles.
///
/// Cycles are applied right to left, so `[[0, 1], [1, 2]]` is `(0 1)(1 2)`.
pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut result = identity(degree);
    for cycle in cycles.iter().rev() {
        let mut seen = std::collections::HashSet::new();
        for &x in cycle {
            if x >= degree {
                return Err(Error::InvalidPermutation(format!(
                    "point {x} out of range for degree {degree}"
                )));
            }
            if !seen.insert(x) {
                return Err(Error::InvalidPermutation(format!(
                    "point {x} repeated inside a cycle"
                )));
            }
        }
        let mut c = identity(degree);
        for (k, &x) in cycle.iter().enumerate() {
            c[x] = cycle[(k + 1) % cycle.len()];
        }
        result = compose(&c, &result);
    }
    Ok(result)
}

/// Disjoint cycle notation, fixed points omitted; the identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn lexicographic(n: usize) -> Vec<Vec<usize>> {
    let mut current = identity(n);
    let mut all = vec![current.clone()];
    // next_permutation
    while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
        let pivot = i - 1;
        let j = (i..n).rev().find(|&j| current[j] > current[pivot]).unwrap();
        current.swap(pivot, j);
        current[i..].reverse();
        all.push(current.clone());
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_compose_right_to_left() {
        let p = from_cycles(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        // (1 2) first: 1 -> 2, then (0 1) leaves 2 alone.
        assert_eq!(p, vec![1, 2, 0]);
        assert_eq!(cycle_notation(&p), "(0 1 2)");
    }

    #[test]
    fn lexicographic_count_and_order() {
        let all = lexicographic(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(lexicographic(1), vec![vec![0]]);
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(from_cycles(3, &[vec![0, 3]]).is_err());
        assert!(from_cycles(3, &[vec![0, 1, 0]]).is_err());
    }

    #[test]
    fn inverse_undoes() {
        let p = vec![2, 0, 3, 1];
        assert_eq!(compose(&p, &inverse(&p)), identity(4));
        assert_eq!(cycle_notation(&identity(3)), "()");
    }
}
