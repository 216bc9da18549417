use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::submodule::Submodule;

fn n_i64(n: usize) -> i64 {
    i64::try_from(n).expect("index fits in i64")
}

/// `D_n`: `(n+1)(n+2)²(n+3)/12` for `(z−w)²`, `n+1` for `z−w`.
pub fn closed_dn(sub: Submodule, n: usize) -> Rational {
    let n = int(n_i64(n));
    match sub {
        Submodule::Zw => n + int(1),
        Submodule::Zw2 => {
            let n2 = &n + int(2);
            (&n + int(1)) * &n2 * &n2 * (&n + int(3)) / int(12)
        }
    }
}

/// `A_{n,k}^n` for `0 ≤ k ≤ n`: `−(n+2)(n+3)(k+1)(k+2)(k−n−1)/12` for
/// `(z−w)²`, `k+1` for `z−w`.
pub fn closed_cofactor_last_row(sub: Submodule, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::Domain(format!("cofactor index k = {k} exceeds n = {n}")));
    }
    let (n, k) = (int(n_i64(n)), int(n_i64(k)));
    Ok(match sub {
        Submodule::Zw => k + int(1),
        Submodule::Zw2 => -(&n + int(2)) * (&n + int(3)) * (&k + int(1)) * (&k + int(2)) * (&k - &n - int(1)) / int(12),
    })
}

/// `A_{0,n}^n`: `(n+1)(n+2)(n+3)/6` for `(z−w)²`, `1` for `z−w`.
pub fn closed_cofactor_first_row_corner(sub: Submodule, n: usize) -> Rational {
    let n = int(n_i64(n));
    match sub {
        Submodule::Zw => int(1),
        Submodule::Zw2 => (&n + int(1)) * (&n + int(2)) * (&n + int(3)) / int(6),
    }
}
