//! Intersection bookkeeping on Hodge lattices: primitive parts,
//! self-intersections and exhaustive enumeration of classes of lines, conics
//! and twisted cubics, i.e. `delta^2 = -2` with small degree `delta . h`.
//!
//! Two conventions for the polarisation are supported. `InLattice` carries
//! the coordinates of `h` in the lattice basis. `Orthogonal` describes a
//! lattice of primitive classes (as produced from period data, whose columns
//! span primitive homology); a class of degree `k` is then
//! `(k/h^2) h + lambda/m` with `lambda` in the lattice and
//! `m = h^2 / gcd(k, h^2)`, and candidates are the `lambda` with
//! `lambda^2 = m^2 (norm - k^2/h^2)`. Whether `(k/h^2) h + lambda/m` is
//! integral in the full lattice (the glue) is not checked in that case.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::lattice::IntMatrix;
use crate::linalg::{rref, Matrix};
use crate::periods::PeriodData;

/// Enumeration boxes with more points than this are refused.
pub const MAX_POINTS: f64 = 5e8;

#[derive(Clone, Debug, PartialEq)]
pub enum Polarization {
    InLattice(Vec<BigInt>),
    Orthogonal { h_square: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HodgeLattice {
    /// Basis vectors in `Z^s`.
    pub basis: IntMatrix,
    pub gram: IntMatrix,
    pub polarization: Polarization,
}

fn dot(g: &IntMatrix, a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            s += ai * &g[i][j] * bj;
        }
    }
    s
}

impl HodgeLattice {
    /// A lattice given directly by its Gram matrix in standard coordinates.
    pub fn from_gram(gram: IntMatrix, polarization: Polarization) -> Result<Self> {
        let r = gram.len();
        if gram.iter().any(|row| row.len() != r) || (0..r).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::Invalid("Gram matrix must be square and symmetric".into()));
        }
        if let Polarization::InLattice(h) = &polarization {
            if h.len() != r {
                return Err(Error::Invalid("polarisation has the wrong length".into()));
            }
        }
        let basis = (0..r).map(|i| (0..r).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
        Ok(HodgeLattice { basis, gram, polarization })
    }

    /// The Hodge lattice spanned by `cycles` inside the primitive homology
    /// of `data`, with the restricted intersection form.
    pub fn from_periods(data: &PeriodData, cycles: &IntMatrix) -> Result<Self> {
        let full = data
            .intersection
            .as_ref()
            .ok_or_else(|| Error::Invalid("the period file has no intersection matrix".into()))?;
        let gram = cycles.iter().map(|a| cycles.iter().map(|b| dot(full, a, b)).collect()).collect();
        Ok(HodgeLattice {
            basis: cycles.clone(),
            gram,
            polarization: Polarization::Orthogonal { h_square: data.h_square.unwrap_or(data.d as i64) },
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn h_square(&self) -> BigInt {
        match &self.polarization {
            Polarization::InLattice(h) => dot(&self.gram, h, h),
            Polarization::Orthogonal { h_square } => BigInt::from(*h_square),
        }
    }

    pub fn pair(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        dot(&self.gram, a, b)
    }
}

fn q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// `delta - (delta.h / h^2) h` for a polarisation inside the lattice.
pub fn primitive_part(l: &HodgeLattice, delta: &[BigInt]) -> Result<Vec<BigRational>> {
    match &l.polarization {
        Polarization::InLattice(h) => {
            let hh = l.pair(h, h);
            if hh.is_zero() {
                return Err(Error::Degenerate("h^2 = 0".into()));
            }
            let c = BigRational::new(l.pair(delta, h), hh);
            Ok(delta.iter().zip(h).map(|(d, hi)| q(d) - &c * q(hi)).collect())
        }
        Polarization::Orthogonal { .. } => Ok(delta.iter().map(q).collect()),
    }
}

/// `delta_prim^2 = delta^2 - (delta.h)^2 / h^2`.
pub fn primitive_self_intersection(l: &HodgeLattice, delta: &[BigInt]) -> Result<BigRational> {
    match &l.polarization {
        Polarization::InLattice(h) => Ok(primitive_square_from_numbers(&l.pair(delta, delta), &l.pair(delta, h), &l.pair(h, h))),
        Polarization::Orthogonal { .. } => Ok(q(&l.pair(delta, delta))),
    }
}

pub fn primitive_square_from_numbers(delta_sq: &BigInt, delta_h: &BigInt, h_sq: &BigInt) -> BigRational {
    q(delta_sq) - BigRational::new(delta_h * delta_h, h_sq.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Line,
    Conic,
    TwistedCubic,
    Degree(i64),
}

impl ClassKind {
    pub fn of_degree(k: i64) -> Self {
        match k {
            1 => ClassKind::Line,
            2 => ClassKind::Conic,
            3 => ClassKind::TwistedCubic,
            k => ClassKind::Degree(k),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ClassKind::Line => "line".into(),
            ClassKind::Conic => "conic".into(),
            ClassKind::TwistedCubic => "twisted-cubic".into(),
            ClassKind::Degree(k) => format!("degree-{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    /// Lattice coordinates of `delta` (`InLattice`) or of `lambda`
    /// (`Orthogonal`).
    pub coords: Vec<BigInt>,
    pub degree: i64,
    pub kind: ClassKind,
    /// Coordinates of the residual class in the same plane section:
    /// `(2k/h^2) h - delta` when integral, `-lambda` for primitive lattices.
    pub partner: Option<Vec<BigInt>>,
    /// `m` with `delta_prim = lambda/m` in the orthogonal convention, else 1.
    pub scale: i64,
}

/// Symmetric elimination: true iff `a` is negative semidefinite of rank `r`.
fn negative_semidefinite_of_rank(mut a: Matrix<BigRational>, r: usize) -> bool {
    let n = a.len();
    let mut live: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    loop {
        let piv = live.iter().position(|&i| !a[i][i].is_zero());
        let Some(p) = piv else {
            return live.iter().all(|&i| live.iter().all(|&j| a[i][j].is_zero())) && rank == r;
        };
        let i = live.remove(p);
        if a[i][i].is_positive() {
            return false;
        }
        rank += 1;
        let d = a[i][i].clone();
        for &j in &live {
            let f = &a[j][i] / &d;
            if f.is_zero() {
                continue;
            }
            for &k in &live {
                let t = &f * &a[i][k];
                a[j][k] -= t;
            }
        }
    }
}

fn inverse(g: &IntMatrix) -> Result<Matrix<BigRational>> {
    let r = g.len();
    let mut aug: Matrix<BigRational> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(q)
                .chain((0..r).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }))
                .collect()
        })
        .collect();
    let piv = rref(&Rationals, &mut aug);
    if piv.len() < r || piv[r - 1] != r - 1 {
        return Err(Error::Degenerate("Gram matrix is singular".into()));
    }
    Ok(aug.into_iter().map(|row| row[r..].to_vec()).collect())
}

fn floor_sqrt(x: &BigRational) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    x.floor().to_integer().sqrt()
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or_else(|| Error::TooLarge("lattice entries exceed 128 bits".into()))
}

/// All `c` in the box with `c G c = norm` and `c G h` in `degrees`.
fn search_box(
    gram: &[Vec<i128>],
    lin: &[i128],
    ranges: &[(i128, i128)],
    norm: i128,
    degrees: &(dyn Fn(i128) -> bool + Sync),
) -> Vec<Vec<i128>> {
    let r = gram.len();
    if r == 0 {
        return Vec::new();
    }
    let first: Vec<i128> = (ranges[0].0..=ranges[0].1).collect();
    let parts = crate::par::map(&first, |&c0| {
        let mut out = Vec::new();
        let mut c = vec![0i128; r];
        c[0] = c0;
        fn rec(
            i: usize,
            c: &mut Vec<i128>,
            gram: &[Vec<i128>],
            lin: &[i128],
            ranges: &[(i128, i128)],
            norm: i128,
            degrees: &(dyn Fn(i128) -> bool + Sync),
            out: &mut Vec<Vec<i128>>,
        ) {
            let r = c.len();
            if i == r {
                let k: i128 = c.iter().zip(lin).map(|(a, b)| a * b).sum();
                if !degrees(k) {
                    return;
                }
                let mut s = 0i128;
                for a in 0..r {
                    if c[a] == 0 {
                        continue;
                    }
                    let row: i128 = (0..r).map(|b| gram[a][b] * c[b]).sum();
                    s += c[a] * row;
                }
                if s == norm {
                    out.push(c.clone());
                }
                return;
            }
            for v in ranges[i].0..=ranges[i].1 {
                c[i] = v;
                rec(i + 1, c, gram, lin, ranges, norm, degrees, out);
            }
            c[i] = 0;
        }
        rec(1, &mut c, gram, lin, ranges, norm, degrees, &mut out);
        out
    });
    parts.into_iter().flatten().collect()
}

fn check_points(ranges: &[(i128, i128)]) -> Result<()> {
    let pts: f64 = ranges.iter().map(|(a, b)| (b - a + 1) as f64).product();
    if pts > MAX_POINTS {
        return Err(Error::TooLarge(format!(
            "enumeration box has {pts:.3e} points, above the limit of {MAX_POINTS:.0e}"
        )));
    }
    Ok(())
}

fn to_big(v: &[i128]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Classes with `delta^2 = norm` and `1 <= delta.h <= degree_bound`, sorted
/// by degree then coordinates.
pub fn enumerate_candidates(l: &HodgeLattice, degree_bound: i64, norm: i64) -> Result<Vec<Candidate>> {
    let r = l.rank();
    let hh = l.h_square();
    if !hh.is_positive() {
        return Err(Error::Degenerate("h^2 must be positive".into()));
    }
    let gram: Vec<Vec<i128>> = l.gram.iter().map(|row| row.iter().map(to_i128).collect()).collect::<Result<_>>()?;
    let ginv = if r > 0 { inverse(&l.gram)? } else { Vec::new() };
    let mut out = Vec::new();
    match &l.polarization {
        Polarization::InLattice(h) => {
            // h^2 G - (G h)(G h)^T must be negative semidefinite with kernel h.
            let gh: Vec<BigInt> = (0..r).map(|i| (0..r).map(|j| &l.gram[i][j] * &h[j]).sum()).collect();
            let form: Matrix<BigRational> =
                (0..r).map(|i| (0..r).map(|j| q(&(&hh * &l.gram[i][j] - &gh[i] * &gh[j]))).collect()).collect();
            if !negative_semidefinite_of_rank(form, r.saturating_sub(1)) {
                return Err(Error::Degenerate("the complement of h is not negative definite".into()));
            }
            let kmax = BigRational::from_integer(degree_bound.into());
            let excess = &kmax * &kmax / q(&hh) - q(&BigInt::from(norm));
            let ranges: Vec<(i128, i128)> = (0..r)
                .map(|i| {
                    let w = q(&(&h[i] * &h[i])) / q(&hh) - &ginv[i][i];
                    let b = floor_sqrt(&(w * &excess));
                    // centre k h_i / h^2 for k in 0..=kmax
                    let lo = BigRational::new(&h[i] * BigInt::from(degree_bound), hh.clone()).min(BigRational::zero());
                    let hi = BigRational::new(&h[i] * BigInt::from(degree_bound), hh.clone()).max(BigRational::zero());
                    let lo = lo.floor().to_integer() - &b - 1;
                    let hi = hi.ceil().to_integer() + &b + 1;
                    Ok((to_i128(&lo)?, to_i128(&hi)?))
                })
                .collect::<Result<_>>()?;
            check_points(&ranges)?;
            let lin: Vec<i128> = gh.iter().map(to_i128).collect::<Result<_>>()?;
            let hits = search_box(&gram, &lin, &ranges, norm as i128, &|k| k >= 1 && k <= degree_bound as i128);
            for c in hits {
                let k: i128 = c.iter().zip(&lin).map(|(a, b)| a * b).sum();
                let k = k as i64;
                let two_k = BigInt::from(2 * k);
                let partner = if (&two_k % &hh).is_zero() {
                    let t = &two_k / &hh;
                    Some(h.iter().zip(&c).map(|(hi, ci)| &t * hi - BigInt::from(*ci)).collect())
                } else {
                    None
                };
                out.push(Candidate { coords: to_big(&c), degree: k, kind: ClassKind::of_degree(k), partner, scale: 1 });
            }
        }
        Polarization::Orthogonal { .. } => {
            let g_neg: Matrix<BigRational> = l.gram.iter().map(|row| row.iter().map(q).collect()).collect();
            if !negative_semidefinite_of_rank(g_neg, r) {
                return Err(Error::Degenerate("a primitive lattice must be negative definite".into()));
            }
            let hh_i = hh.to_i64().ok_or_else(|| Error::TooLarge("h^2".into()))?;
            for k in 1..=degree_bound {
                let m = hh_i / k.gcd(&hh_i);
                let km = k * m / hh_i; // k/gcd
                let target = m * m * norm - km * km * hh_i;
                if target > 0 {
                    continue;
                }
                let ranges: Vec<(i128, i128)> = (0..r)
                    .map(|i| {
                        let b = floor_sqrt(&(-(&ginv[i][i]) * BigRational::from_integer((-target).into())));
                        let b = to_i128(&b)? + 1;
                        Ok((-b, b))
                    })
                    .collect::<Result<_>>()?;
                check_points(&ranges)?;
                let zero = vec![0i128; r];
                let hits = search_box(&gram, &zero, &ranges, target as i128, &|_| true);
                for c in hits {
                    if target == 0 && c.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let partner = Some(c.iter().map(|&x| BigInt::from(-x)).collect());
                    out.push(Candidate { coords: to_big(&c), degree: k, kind: ClassKind::of_degree(k), partner, scale: m });
                }
            }
        }
    }
    out.sort_by(|a, b| (a.degree, &a.coords).cmp(&(b.degree, &b.coords)));
    Ok(out)
}

/// Number of candidates of each kind.
pub fn kind_counts(c: &[Candidate]) -> std::collections::BTreeMap<ClassKind, usize> {
    let mut m = std::collections::BTreeMap::new();
    for x in c {
        *m.entry(x.kind.clone()).or_default() += 1;
    }
    m
}

pub fn primitive_square_of_candidate(l: &HodgeLattice, c: &Candidate) -> Result<BigRational> {
    match &l.polarization {
        Polarization::InLattice(_) => primitive_self_intersection(l, &c.coords),
        Polarization::Orthogonal { .. } => {
            Ok(BigRational::new(l.pair(&c.coords, &c.coords), BigInt::from(c.scale * c.scale)))
        }
    }
}

pub fn abs_max(c: &[BigInt]) -> BigInt {
    c.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_matrix;

    fn toy() -> HodgeLattice {
        HodgeLattice::from_gram(int_matrix(&[&[4, 2], &[2, -2]]), Polarization::InLattice(vec![1.into(), 0.into()])).unwrap()
    }

    #[test]
    fn toy_primitive_parts() {
        let l = toy();
        let d = vec![BigInt::from(0), BigInt::from(1)];
        assert_eq!(primitive_self_intersection(&l, &d).unwrap(), BigRational::from_integer((-3).into()));
        let h = vec![BigInt::from(1), BigInt::from(0)];
        assert!(primitive_part(&l, &h).unwrap().iter().all(|x| x.is_zero()));
        let p = primitive_part(&l, &d).unwrap();
        let ph: BigRational = (0..2).map(|i| (0..2).map(|j| &p[i] * q(&l.gram[i][j]) * q(&h[j])).sum::<BigRational>()).sum();
        assert!(ph.is_zero());
        assert_eq!(
            primitive_square_from_numbers(&(-2).into(), &3.into(), &4.into()),
            BigRational::new((-17).into(), 4.into())
        );
    }

    #[test]
    fn toy_enumeration() {
        let l = toy();
        let c = enumerate_candidates(&l, 3, -2).unwrap();
        let coords: Vec<_> = c.iter().map(|x| x.coords.clone()).collect();
        assert_eq!(coords, vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(-1)]]);
        assert!(c.iter().all(|x| x.kind == ClassKind::Conic));
        assert_eq!(c[0].partner.as_ref().unwrap(), &c[1].coords);
    }

    #[test]
    fn orthogonal_convention() {
        // A1(-2)^2 primitive lattice (diag -2,-2) for a quartic: conic targets are lambda^2 = -12.
        let l = HodgeLattice::from_gram(int_matrix(&[&[-4, 0], &[0, -8]]), Polarization::Orthogonal { h_square: 4 }).unwrap();
        let c = enumerate_candidates(&l, 2, -2).unwrap();
        for x in &c {
            let s = primitive_square_of_candidate(&l, x).unwrap();
            let k = BigRational::from_integer(x.degree.into());
            assert_eq!(s + &k * &k / BigRational::from_integer(4.into()), BigRational::from_integer((-2).into()));
        }
        // conics: -4a^2 - 8b^2 = -12 -> (a, b) = (+-1, +-1)
        assert_eq!(kind_counts(&c).get(&ClassKind::Conic), Some(&4));
        assert!(HodgeLattice::from_gram(int_matrix(&[&[1, 0], &[0, -1]]), Polarization::Orthogonal { h_square: 4 })
            .and_then(|l| enumerate_candidates(&l, 2, -2))
            .is_err());
    }
}
