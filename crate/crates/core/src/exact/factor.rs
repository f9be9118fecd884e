use crate::error::{Error, Result};

/// Largest accepted input, `2⁶³ − 1`.
pub const FACTORIZATION_CAP: u64 = i64::MAX as u64;

/// Prime factorization by trial division, ascending primes.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factorize 0".into()));
    }
    if n > FACTORIZATION_CAP {
        return Err(Error::FactorizationCap { value: n });
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    // 6k ± 1 wheel
    let mut d: u64 = 5;
    while (d as u128) * (d as u128) <= rest as u128 {
        push(d, &mut rest);
        push(d + 2, &mut rest);
        d += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(factors)
}
