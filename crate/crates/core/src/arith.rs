//! Small integer helpers for orders and theorem parameters.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn smallest_prime_divisor(n: u64) -> Option<u64> {
    factorize(n).first().map(|&(p, _)| p)
}

/// If `n = p^k` for a prime `p` and `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}
