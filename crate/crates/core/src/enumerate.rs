//! Exhaustive enumeration helpers shared by the law suites.
//!
//! Cost: `functions(d, c)` yields `c^d` items, `subsets(n)` yields `2^n`.

/// Every function `{0..domain} -> {0..codomain}` as a vector, in
/// lexicographic order. Yields a single empty vector when `domain == 0`.
pub fn functions(domain: usize, codomain: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if domain == 0 || codomain > 0 {
        Some(vec![0; domain])
    } else {
        None
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = domain;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < codomain {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

/// Every subset of `{0..n}` as a membership vector.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    functions(n, 2).map(|f| f.into_iter().map(|b| b == 1).collect())
}

/// Every permutation of `{0..n}` (Heap's algorithm, materialized).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut items, &mut out);
    out
}

/// Mixed-radix decoding: flat index -> coordinates (last coordinate fastest).
pub fn unflatten(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut coords = vec![0; radices.len()];
    for (slot, &r) in coords.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    coords
}

pub fn flatten(coords: &[usize], radices: &[usize]) -> usize {
    coords.iter().zip(radices).fold(0, |acc, (&c, &r)| acc * r + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_counts() {
        assert_eq!(functions(3, 2).count(), 8);
        assert_eq!(functions(2, 3).count(), 9);
        assert_eq!(functions(0, 0).count(), 1);
        assert_eq!(functions(2, 0).count(), 0);
        assert_eq!(subsets(4).count(), 16);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn permutations_are_distinct() {
        let mut p = permutations(4);
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 24);
    }

    #[test]
    fn radix_round_trip() {
        let radices = [2, 3, 4];
        for i in 0..24 {
            assert_eq!(flatten(&unflatten(i, &radices), &radices), i);
        }
        assert_eq!(unflatten(5, &radices), vec![0, 1, 1]);
    }
}
