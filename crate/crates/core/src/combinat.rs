//! Counting functions and small enumerators.

use num_bigint::BigInt;
use num_traits::One;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `C(n, k)` for signed `n`, zero outside `0 ≤ k ≤ n`.
pub fn binomial_signed(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `a(a-1)…(a-i+1)`; `1` for `i = 0`.
pub fn falling_factorial(a: i64, i: u32) -> i64 {
    (0..i as i64).map(|j| a - j).product()
}

/// Generalized Fibonacci numbers: `F_i = i+1` for `i < m`, `F_{i+m} = F_{i+m-1} + F_i`.
///
/// # Panics
/// If `m == 0`.
pub fn fibonacci_m(m: usize, n: usize) -> u128 {
    assert!(m >= 1, "fibonacci_m needs m >= 1");
    let mut f: Vec<u128> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = if i < m { i as u128 + 1 } else { f[i - 1] + f[i - m] };
        f.push(v);
    }
    f[n]
}

/// Subsets `{i_1 < … < i_k}` of `0..window` with consecutive gaps at least `gap`,
/// in lexicographic order.
pub fn gap_subsets(window: usize, gap: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, window: usize, gap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in start..window {
            cur.push(i);
            rec(i + gap, window, gap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, window, gap.max(1), &mut Vec::new(), &mut out);
    out
}

/// Weakly increasing sequences of `k` nonnegative integers with sum `s`.
pub fn weak_sequences(k: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, s: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if s == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // remaining k entries are all >= x, so x*k <= s
        let mut x = lo;
        while x * k <= s {
            cur.push(x);
            rec(k - 1, s - x, x, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(k, s, 0, &mut Vec::new(), &mut out);
    out
}

/// Weakly increasing sequences of length `k` with entries in `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in lo..n {
            cur.push(x);
            rec(n, k, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into exactly `parts` nonnegative parts.
pub fn weak_compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=n {
            cur.push(x);
            rec(n - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, parts, &mut Vec::new(), &mut out);
    out
}
