//! Multi-index sign bookkeeping. Every reordering of an index tuple in the
//! crate goes through [`sort_with_sign`].

/// Sorts `idx` ascending and returns the permutation sign; a repeated index
/// makes the alternating product vanish and yields `None`.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Position of a strictly increasing tuple in [`increasing_tuples`] order.
pub fn tuple_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &t) in tuple.iter().enumerate() {
        for skipped in prev..t {
            rank += binomial(n - skipped - 1, k - pos - 1);
        }
        prev = t + 1;
    }
    rank
}
