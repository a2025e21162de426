use super::ColoringError;

/// Walecki's decomposition of `K_n` (odd `n`) into `(n-1)/2` Hamiltonian
/// cycles. Each cycle is returned as a vertex sequence; the closing edge from
/// the last vertex back to the first is implied.
///
/// Vertex `n-1` is the hub; cycle `i` visits it and then zigzags
/// `i, i+1, i-1, i+2, i-2, ..., i+(n-1)/2` modulo `n-1`.
pub fn walecki_decomposition(n: usize) -> Result<Vec<Vec<usize>>, ColoringError> {
    if n < 3 || n % 2 == 0 {
        return Err(ColoringError::InvalidParameter(format!(
            "Walecki decomposition needs odd n >= 3, got {n}"
        )));
    }
    let m = n - 1;
    let cycles = (0..m / 2)
        .map(|i| {
            let mut seq = Vec::with_capacity(n);
            seq.push(n - 1);
            for s in 0..m {
                let v = if s == 0 {
                    i
                } else if s % 2 == 1 {
                    (i + s.div_ceil(2)) % m
                } else {
                    (i + m - s / 2) % m
                };
                seq.push(v);
            }
            seq
        })
        .collect();
    Ok(cycles)
}

/// 1-factorization of `K_n` (even `n`) by the circle method: `n-1` perfect
/// matchings, each edge given as `(u, v)` with `u < v`.
pub fn one_factorization(n: usize) -> Result<Vec<Vec<(usize, usize)>>, ColoringError> {
    if n < 2 || n % 2 == 1 {
        return Err(ColoringError::InvalidParameter(format!(
            "1-factorization needs even n >= 2, got {n}"
        )));
    }
    let m = n - 1;
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let factors = (0..m)
        .map(|r| {
            let mut f = vec![norm(r, n - 1)];
            for i in 1..n / 2 {
                f.push(norm((r + i) % m, (r + m - i) % m));
            }
            f.sort_unstable();
            f
        })
        .collect();
    Ok(factors)
}

/// Edges of a closed vertex sequence.
pub(crate) fn cycle_edges(cycle: &[usize]) -> Vec<(usize, usize)> {
    (0..cycle.len())
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_index, pair_count};

    fn assert_partition(n: usize, parts: &[Vec<(usize, usize)>]) {
        let mut seen = vec![0u32; pair_count(n)];
        for p in parts {
            for &(u, v) in p {
                assert!(u < v && v < n);
                seen[edge_index(n, u, v)] += 1;
            }
        }
        assert!(seen.iter().all(|&k| k == 1), "not an exact partition for n={n}");
    }

    #[test]
    fn walecki_partitions_into_hamiltonian_cycles() {
        for n in (3..=61).step_by(2) {
            let cycles = walecki_decomposition(n).unwrap();
            assert_eq!(cycles.len(), (n - 1) / 2);
            for c in &cycles {
                let mut sorted = c.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..n).collect::<Vec<_>>(), "not Hamiltonian");
            }
            let parts: Vec<_> = cycles.iter().map(|c| cycle_edges(c)).collect();
            assert_partition(n, &parts);
        }
        assert_eq!(walecki_decomposition(3).unwrap().len(), 1);
        assert_eq!(walecki_decomposition(5).unwrap().iter().map(Vec::len).collect::<Vec<_>>(), [5, 5]);
        assert!(walecki_decomposition(6).is_err());
    }

    #[test]
    fn circle_method_partitions_into_perfect_matchings() {
        for n in (2..=60).step_by(2) {
            let fs = one_factorization(n).unwrap();
            assert_eq!(fs.len(), n - 1);
            for f in &fs {
                assert_eq!(f.len(), n / 2);
                let mut covered = vec![false; n];
                for &(u, v) in f {
                    assert!(!covered[u] && !covered[v]);
                    covered[u] = true;
                    covered[v] = true;
                }
            }
            assert_partition(n, &fs);
        }
        assert_eq!(one_factorization(2).unwrap(), vec![vec![(0, 1)]]);
        assert!(one_factorization(5).is_err());
    }
}
