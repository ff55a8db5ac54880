//! Basis blades of the Clifford algebra with negative-definite generators
//! and their signed product.
//!
//! The algebra is generated by `e_1, ..., e_n` subject to
//! `e_j e_k + e_k e_j = -2 delta_{jk}`, so each generator squares to `-1`.
//! A blade is a product of distinct generators in increasing index order,
//! stored as a bitmask; the empty product is the scalar unit. Every product
//! of blades reduces to a unique `sign * blade` pair, which keeps
//! polynomial coefficients well defined.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Largest supported dimension (bitmask width).
pub const MAX_DIM: usize = 30;

/// Canonical basis element: an increasing set of generator indices.
///
/// Bit `j - 1` of the mask is set when `e_j` is a factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(u32);

impl Blade {
    /// The scalar unit (empty index set).
    pub const SCALAR: Blade = Blade(0);

    /// Single generator `e_j`, `1 <= j <= n`.
    pub fn generator(j: usize, n: usize) -> Result<Self, Error> {
        check_dimension(n)?;
        if j == 0 || j > n {
            return Err(Error::BladeIndexOutOfRange { index: j, n });
        }
        Ok(Blade(1 << (j - 1)))
    }

    /// Blade from a strictly increasing index list in `1..=n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self, Error> {
        check_dimension(n)?;
        let mut mask = 0u32;
        let mut previous = 0usize;
        for &index in indices {
            if index == 0 || index > n {
                return Err(Error::BladeIndexOutOfRange { index, n });
            }
            if index <= previous {
                return Err(Error::BladeNotIncreasing(indices.to_vec()));
            }
            previous = index;
            mask |= 1 << (index - 1);
        }
        Ok(Blade(mask))
    }

    pub(crate) fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=MAX_DIM).filter(move |j| mask & (1 << (j - 1)) != 0)
    }

    /// Number of generator factors.
    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }

    /// True when every index is at most `n`.
    pub fn fits_dimension(self, n: usize) -> bool {
        n <= MAX_DIM && self.0 < (1u32 << n)
    }

    /// Canonical product in the ambient algebra. The result mask is the
    /// symmetric difference; the sign counts the transpositions that sort
    /// the concatenated factors plus one flip per contracted pair.
    pub fn product(self, other: Blade) -> SignedBlade {
        let mut sign = reorder_sign(self.0, other.0);
        let common = self.0 & other.0;
        if !common.count_ones().is_multiple_of(2) {
            sign = -sign;
        }
        SignedBlade {
            sign,
            blade: Blade(self.0 ^ other.0),
        }
    }
}

/// Parity of the number of index pairs `(i, j)` with `i` in `a`, `j` in `b`
/// and `i > j`: the adjacent transpositions needed to interleave the two
/// sorted factor lists.
fn reorder_sign(a: u32, b: u32) -> i32 {
    let mut rest = a >> 1;
    let mut swaps = 0u32;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_dimension(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_DIM {
        Err(Error::InvalidDimension { n, max: MAX_DIM })
    } else {
        Ok(())
    }
}

// Blades sort by their index lists, so `1 < e1 < e1*e2 < e2`. This is the
// tie-break order used for polynomial terms and serialized output.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return write!(f, "1");
        }
        let mut first = true;
        for index in self.indices() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "e{index}")?;
            first = false;
        }
        Ok(())
    }
}

/// A blade together with the sign produced by canonicalization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SignedBlade {
    /// `+1` or `-1`.
    pub sign: i32,
    pub blade: Blade,
}

/// Validated product of two blades in `Cl_{0,n}`.
pub fn blade_product(a: Blade, b: Blade, n: usize) -> Result<SignedBlade, Error> {
    check_dimension(n)?;
    for blade in [a, b] {
        if !blade.fits_dimension(n) {
            let index = blade.indices().max().unwrap_or(0);
            return Err(Error::BladeIndexOutOfRange { index, n });
        }
    }
    Ok(a.product(b))
}

/// Grade (number of factors) of a blade.
pub fn grade(b: Blade) -> usize {
    b.grade()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    /// Independent sign oracle: concatenate the index lists and
    /// canonicalize by adjacent transpositions, flipping the sign per swap
    /// and contracting equal neighbours with a factor `-1`.
    fn oracle(a: &[usize], b: &[usize]) -> (i32, Vec<usize>) {
        let mut list: Vec<usize> = a.iter().chain(b).copied().collect();
        let mut sign = 1;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < list.len() {
                if list[i] == list[i + 1] {
                    list.drain(i..=i + 1);
                    sign = -sign;
                    changed = true;
                } else if list[i] > list[i + 1] {
                    list.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else {
                    i += 1;
                }
            }
            if !changed {
                return (sign, list);
            }
        }
    }

    fn indices_of(b: Blade) -> Vec<usize> {
        b.indices().collect()
    }

    fn all_blades(n: usize) -> Vec<Blade> {
        (0..(1u32 << n)).map(Blade::from_mask).collect()
    }

    #[test]
    fn generator_squares_to_minus_one() {
        for n in 1..=4 {
            for j in 1..=n {
                let e = Blade::generator(j, n).unwrap();
                let product = blade_product(e, e, n).unwrap();
                assert_eq!(product.sign, -1);
                assert!(product.blade.is_scalar());
            }
        }
    }

    #[test]
    fn disjoint_ascending_product_keeps_sign() {
        let e1 = Blade::generator(1, 2).unwrap();
        let e2 = Blade::generator(2, 2).unwrap();
        let product = blade_product(e1, e2, 2).unwrap();
        assert_eq!(product.sign, 1);
        assert_eq!(indices_of(product.blade), vec![1, 2]);
    }

    #[test]
    fn contraction_on_the_right() {
        let e12 = Blade::from_indices(&[1, 2], 2).unwrap();
        let e2 = Blade::generator(2, 2).unwrap();
        let (sign, list) = oracle(&[1, 2], &[2]);
        assert_eq!((sign, list), (-1, vec![1]));
        let product = blade_product(e12, e2, 2).unwrap();
        assert_eq!(product.sign, -1);
        assert_eq!(indices_of(product.blade), vec![1]);
    }

    #[test]
    fn matches_oracle_exhaustively() {
        for n in 1..=4 {
            for a in all_blades(n) {
                for b in all_blades(n) {
                    let got = blade_product(a, b, n).unwrap();
                    let (sign, list) = oracle(&indices_of(a), &indices_of(b));
                    assert_eq!(got.sign, sign, "{a} * {b}");
                    assert_eq!(indices_of(got.blade), list, "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn scalar_is_two_sided_identity() {
        for b in all_blades(4) {
            let left = blade_product(Blade::SCALAR, b, 4).unwrap();
            let right = blade_product(b, Blade::SCALAR, 4).unwrap();
            assert_eq!((left.sign, left.blade), (1, b));
            assert_eq!((right.sign, right.blade), (1, b));
        }
    }

    #[test]
    fn generators_anticommute() {
        let n = 4;
        for j in 1..=n {
            for k in 1..=n {
                if j == k {
                    continue;
                }
                let ej = Blade::generator(j, n).unwrap();
                let ek = Blade::generator(k, n).unwrap();
                let jk = blade_product(ej, ek, n).unwrap();
                let kj = blade_product(ek, ej, n).unwrap();
                assert_eq!(jk.blade, kj.blade);
                assert_eq!(jk.sign, -kj.sign);
            }
        }
    }

    #[test]
    fn associative_exhaustively() {
        for n in 1..=4 {
            let blades = all_blades(n);
            for &a in &blades {
                for &b in &blades {
                    let ab = a.product(b);
                    for &c in &blades {
                        let bc = b.product(c);
                        let left = ab.blade.product(c);
                        let right = a.product(bc.blade);
                        assert_eq!(left.blade, right.blade);
                        assert_eq!(ab.sign * left.sign, bc.sign * right.sign);
                    }
                }
            }
        }
    }

    /// Radial property: the anticommutator `{e_j, e_k}` is scalar valued
    /// and commutes with every generator, `[{e_j, e_k}, e_l] = 0`,
    /// expanded over signed blades.
    #[test]
    fn anticommutators_are_radial() {
        let n = 4;
        for j in 1..=n {
            for k in 1..=n {
                let ej = Blade::generator(j, n).unwrap();
                let ek = Blade::generator(k, n).unwrap();
                // {e_j, e_k} as a signed-blade sum; scalar by construction.
                let jk = ej.product(ek);
                let kj = ek.product(ej);
                let anticommutator = [(jk.sign, jk.blade), (kj.sign, kj.blade)];
                for &(_, blade) in &anticommutator {
                    if j == k {
                        assert!(blade.is_scalar());
                    }
                }
                for l in 1..=n {
                    let el = Blade::generator(l, n).unwrap();
                    let mut sums: BTreeMap<Blade, i32> = BTreeMap::new();
                    for &(coefficient, blade) in &anticommutator {
                        let left = blade.product(el);
                        *sums.entry(left.blade).or_insert(0) += coefficient * left.sign;
                        let right = el.product(blade);
                        *sums.entry(right.blade).or_insert(0) -= coefficient * right.sign;
                    }
                    assert!(sums.values().all(|&c| c == 0), "j={j} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn grade_counts_factors() {
        assert_eq!(grade(Blade::SCALAR), 0);
        assert_eq!(grade(Blade::generator(3, 3).unwrap()), 1);
        assert_eq!(grade(Blade::from_indices(&[1, 2], 2).unwrap()), 2);
    }

    #[test]
    fn rejects_out_of_range_indices() {
        assert!(Blade::generator(3, 2).is_err());
        assert!(Blade::generator(0, 2).is_err());
        assert!(Blade::from_indices(&[1, 3], 2).is_err());
        assert!(Blade::from_indices(&[2, 1], 3).is_err());
        assert!(Blade::from_indices(&[1, 1], 3).is_err());
        let e3 = Blade::generator(3, 3).unwrap();
        assert!(blade_product(e3, e3, 2).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Blade::SCALAR.to_string(), "1");
        assert_eq!(Blade::generator(1, 3).unwrap().to_string(), "e1");
        assert_eq!(
            Blade::from_indices(&[1, 2], 3).unwrap().to_string(),
            "e1*e2"
        );
    }

    #[test]
    fn ordering_follows_index_lists() {
        let order: Vec<String> = {
            let mut blades = all_blades(3);
            blades.sort();
            blades.iter().map(Blade::to_string).collect()
        };
        assert_eq!(
            order,
            ["1", "e1", "e1*e2", "e1*e2*e3", "e1*e3", "e2", "e2*e3", "e3"]
        );
    }
}
