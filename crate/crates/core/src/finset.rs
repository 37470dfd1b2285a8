//! Functions between finite ordinals `[n] = {0, …, n-1}` as index tables.

/// All functions `[m] → [n]` as tables of length `m`, in lexicographic order.
pub fn functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    if n == 0 {
        return Vec::new();
    }
    let count = n.pow(m as u32);
    let mut out = Vec::with_capacity(count);
    let mut current = vec![0usize; m];
    loop {
        out.push(current.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < n {
                break;
            }
            current[i] = 0;
        }
    }
}

/// `|[n]^[m]|`, saturating.
pub fn count_functions(m: usize, n: usize) -> usize {
    (0..m).fold(1usize, |acc, _| acc.saturating_mul(n))
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn is_injective(f: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    f.iter().all(|x| seen.insert(*x))
}

/// Mixed-radix index of a tuple whose `i`-th entry lies below `radix[i]`;
/// the first entry is the most significant digit.
pub fn encode(digits: &[usize], radix: &[usize]) -> usize {
    digits.iter().zip(radix).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Inverse of [`encode`].
pub fn decode(mut index: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for i in (0..radix.len()).rev() {
        out[i] = index % radix[i];
        index /= radix[i];
    }
    out
}
