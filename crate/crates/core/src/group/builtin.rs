//! The group-spec mini-language.
//!
//! * `C{n}` cyclic of prime-power order `n`
//! * `D{2^n}`, `Q{2^n}`, `SD{2^n}`, `M{2^n}`: two-generator 2-groups with normal form
//!   `a^i b^j` and `b a b⁻¹ = a^t`
//! * `He{p^3}` unitriangular 3×3 matrices over F_p
//! * `A x B` direct products (factors joined by `x`)

use super::{prime_power_base, FiniteGroup};
use crate::error::{Error, Result};

/// The built-in acceptance set.
pub fn builtin_specs() -> &'static [&'static str] {
    &[
        "C2", "C4", "C8", "C16", "C3", "C9", "C27", "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3", "D8", "Q8", "D16", "Q16",
        "SD16", "M16", "He27",
    ]
}

pub fn make_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let factors: Vec<&str> = spec.split('x').map(str::trim).collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(Error::UnknownGroup(spec.to_string()));
    }
    let mut groups = factors.iter().map(|f| make_factor(f)).collect::<Result<Vec<_>>>()?;
    let mut acc = groups.remove(0);
    for g in groups {
        acc = direct_product(&acc, &g)?;
    }
    Ok(acc.with_name(spec))
}

fn make_factor(spec: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(spec.to_string());
    let split = spec.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
    let (family, digits) = spec.split_at(split);
    let n: usize = digits.parse().map_err(|_| unknown())?;
    if n > super::HARD_ORDER_LIMIT {
        return Err(Error::TooLarge { order: n, bound: super::HARD_ORDER_LIMIT });
    }
    match family {
        "C" => cyclic(n),
        "D" | "Q" | "SD" | "M" => two_generator(family, n),
        "He" => heisenberg(n),
        _ => Err(unknown()),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    let p = prime_power_base(n).ok_or(Error::NotPrimePower(n))?;
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    FiniteGroup::from_table(format!("C{n}"), p, table)
}

/// `a` of order `m = n/2`, `b a b⁻¹ = a^t`, `b² = a^s`; element `a^i b^j` has index `i + m j`.
fn two_generator(family: &str, n: usize) -> Result<FiniteGroup> {
    if prime_power_base(n) != Some(2) {
        return Err(Error::NotPrimePower(n));
    }
    let m = n / 2;
    let min = if matches!(family, "SD" | "M") { 16 } else { 8 };
    if n < min {
        return Err(Error::UnknownGroup(format!("{family}{n}")));
    }
    let (t, s) = match family {
        "D" => (m - 1, 0),
        "Q" => (m - 1, m / 2),
        "SD" => (m / 2 - 1, 0),
        "M" => (m / 2 + 1, 0),
        _ => unreachable!(),
    };
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (i, j) = (x % m, x / m);
        for y in 0..n {
            let (k, l) = (y % m, y / m);
            // a^i b^j a^k b^l = a^(i + t^j k) b^(j + l)
            let twisted = if j == 1 { t * k } else { k };
            let mut e = i + twisted;
            let mut f = j + l;
            if f == 2 {
                e += s;
                f = 0;
            }
            table[x * n + y] = e % m + m * f;
        }
    }
    FiniteGroup::from_table(format!("{family}{n}"), 2, table)
}

/// `(a, b, c) ↦ [[1, a, c], [0, 1, b], [0, 0, 1]]`, index `a + p b + p² c`.
fn heisenberg(n: usize) -> Result<FiniteGroup> {
    let p = prime_power_base(n).ok_or(Error::NotPrimePower(n))? as usize;
    if p * p * p != n {
        return Err(Error::UnknownGroup(format!("He{n}")));
    }
    let decode = |x: usize| (x % p, x / p % p, x / (p * p));
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (a, b, c) = decode(x);
        for y in 0..n {
            let (a2, b2, c2) = decode(y);
            let (ra, rb, rc) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
            table[x * n + y] = ra + p * rb + p * p * rc;
        }
    }
    FiniteGroup::from_table(format!("He{n}"), p as u64, table)
}

/// `(x, y) ↦ x · |B| + y`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let order = a.order() * b.order();
    if a.prime() != b.prime() {
        return Err(Error::NotPrimePower(order));
    }
    if order > super::HARD_ORDER_LIMIT {
        return Err(Error::TooLarge { order, bound: super::HARD_ORDER_LIMIT });
    }
    let nb = b.order();
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            table[x * order + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        }
    }
    FiniteGroup::from_table(format!("{}x{}", a.name(), b.name()), a.prime(), table)
}
