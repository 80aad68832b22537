//! Small combinatorial iteration helpers.

/// Calls `f` on every `k`-subset of `items` (as an increasing slice of
/// elements, lexicographic in positions) until it returns `false`.
/// Returns `true` when every call returned `true`.
pub fn for_each_combination(items: &[usize], k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let n = items.len();
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if !f(&chosen) {
            return false;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in (i + 1)..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        for (c, &i) in chosen.iter_mut().zip(&idx) {
            *c = items[i];
        }
    }
}

/// Every `k`-subset of `items`, lexicographic.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_combination(items, k, |c| {
        out.push(c.to_vec());
        true
    });
    out
}

/// Binomial coefficient, saturating.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
