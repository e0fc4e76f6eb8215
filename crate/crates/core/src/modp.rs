//! Linear algebra over prime fields, used for cheap rank certificates.
//!
//! For an integer matrix, the rank modulo any prime is at most the rank over
//! the rationals, so a full-rank result mod p certifies full rank over Q.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const PRIMES: [u64; 3] = [2_147_483_647, 1_000_000_007, 998_244_353];

pub fn reduce(n: &BigInt, p: u64) -> u64 {
    let r = (n % BigInt::from(p)).to_i64().expect("residue fits");
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

// every modulus used is below 2^32, so products fit in a u64
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(p < 1 << 32);
    a * b % p
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Rank of `m` over F_p; the matrix is consumed.
pub fn rank(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let iv = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, iv, p);
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let k = row[c];
            if k == 0 {
                continue;
            }
            for j in c..ncols {
                if prow[j] != 0 {
                    row[j] = (row[j] + p - mulmod(k, prow[j], p)) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let p = PRIMES[0];
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]], 2, p), 1);
        assert_eq!(rank(vec![vec![1, 2], vec![3, 4]], 2, p), 2);
        assert_eq!(rank(vec![vec![0, 0]], 2, p), 0);
        // 5 ≡ 0 mod 5
        let row = [5, 10].map(|x| reduce(&BigInt::from(x), 5)).to_vec();
        assert_eq!(rank(vec![row], 2, 5), 0);
    }

    #[test]
    fn reduction_of_negatives() {
        assert_eq!(reduce(&BigInt::from(-1), 7), 6);
        assert_eq!(mulmod(inv(3, 7), 3, 7), 1);
    }
}
