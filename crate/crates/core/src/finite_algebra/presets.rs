//! Named small groups with documented element indexing.
//!
//! * `cyclic n`: index `i` is `t^i` for a fixed generator `t`.
//! * `dihedral n` (order `2n`): index `b·n + i` is `r^i s^b`, with `s r = r⁻¹ s`.
//! * `symmetric n` (`n ≤ 4`): permutations of `0..n` as image arrays in
//!   lexicographic order; `σ·τ` applies `σ` first.
//! * `quaternion8`: `1, −1, i, −i, j, −j, k, −k`.
//! * `klein4`: `{0, 1, 2, 3}` under bitwise xor.
//! * `trivial`: the group of order 1.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// Largest group order accepted anywhere in the crate.
pub const MAX_GROUP_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    Klein4,
}

impl Preset {
    /// Parses names such as `cyclic4`, `cyclic 4`, `dihedral3`, `symmetric3`,
    /// `quaternion8`, `klein4`, `trivial`.
    pub fn parse(name: &str) -> Result<Self> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        match compact.as_str() {
            "trivial" => return Ok(Preset::Trivial),
            "quaternion8" | "q8" => return Ok(Preset::Quaternion8),
            "klein4" | "v4" => return Ok(Preset::Klein4),
            _ => {}
        }
        let split = compact.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
        let (head, digits) = compact.split_at(split);
        let n: usize = digits.parse().map_err(|_| Error::UnknownPreset(name.to_string()))?;
        match head {
            "cyclic" | "c" => Ok(Preset::Cyclic(n)),
            "dihedral" | "d" => Ok(Preset::Dihedral(n)),
            "symmetric" | "s" => Ok(Preset::Symmetric(n)),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn build(self) -> Result<FiniteGroup> {
        let unsupported = |name: &str, size: usize| Error::UnsupportedSize { name: name.to_string(), size };
        match self {
            Preset::Trivial => Ok(FiniteGroup::trivial()),
            Preset::Cyclic(n) => {
                if n == 0 || n > MAX_GROUP_ORDER {
                    return Err(unsupported("cyclic", n));
                }
                Ok(cyclic(n))
            }
            Preset::Dihedral(n) => {
                if n == 0 || 2 * n > MAX_GROUP_ORDER {
                    return Err(unsupported("dihedral", n));
                }
                Ok(dihedral(n))
            }
            Preset::Symmetric(n) => {
                if n == 0 || n > 4 {
                    return Err(unsupported("symmetric", n));
                }
                Ok(symmetric(n))
            }
            Preset::Quaternion8 => Ok(quaternion8()),
            Preset::Klein4 => Ok(klein4()),
        }
    }
}

/// `preset_group("cyclic", Some(4))` or `preset_group("cyclic4", None)`.
pub fn preset_group(name: &str, param: Option<usize>) -> Result<FiniteGroup> {
    let preset = match param {
        Some(n) => Preset::parse(&alloc::format!("{name}{n}"))?,
        None => Preset::parse(name)?,
    };
    preset.build()
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push((a + b) % n);
        }
    }
    FiniteGroup::from_flat(n, table).expect("cyclic group")
}

pub fn dihedral(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let mut table = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            let (b1, i) = (x / n, x % n);
            let (b2, j) = (y / n, y % n);
            let rot = if b1 == 0 { (i + j) % n } else { (i + n - j) % n };
            table.push(((b1 + b2) % 2) * n + rot);
        }
    }
    FiniteGroup::from_flat(m, table).expect("dihedral group")
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let perms = permutations(n);
    let identity: Vec<usize> = (0..n).collect();
    FiniteGroup::from_operation(perms, &identity, |a, b| a.iter().map(|&x| b[x]).collect()).0
}

pub fn quaternion8() -> FiniteGroup {
    // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k; index = 2*unit + sign
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, u) | (u, 0) => (0, u),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (s1, u1) = (x % 2, x / 2);
            let (s2, u2) = (y % 2, y / 2);
            let (s3, u3) = unit_mul(u1, u2);
            table.push(2 * u3 + (s1 + s2 + s3) % 2);
        }
    }
    FiniteGroup::from_flat(8, table).expect("quaternion group")
}

pub fn klein4() -> FiniteGroup {
    let mut table = Vec::with_capacity(16);
    for a in 0..4usize {
        for b in 0..4usize {
            table.push(a ^ b);
        }
    }
    FiniteGroup::from_flat(4, table).expect("klein four group")
}

/// Alternating group on 4 points (even permutations, lexicographic order).
pub fn alternating4() -> FiniteGroup {
    let perms: Vec<Vec<usize>> = permutations(4).into_iter().filter(|p| is_even(p)).collect();
    let identity: Vec<usize> = (0..4).collect();
    FiniteGroup::from_operation(perms, &identity, |a, b| a.iter().map(|&x| b[x]).collect()).0
}

/// Dicyclic group of order `4n`: `a^i x^b`, with `a^{2n} = 1`, `x² = a^n`, `x⁻¹ a x = a⁻¹`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|b| (0..m).map(move |i| (b, i))).collect();
    FiniteGroup::from_operation(elements, &(0, 0), |&(b1, i), &(b2, j)| {
        // a^i x^b1 · a^j x^b2 = a^{i ± j} x^{b1} x^{b2}
        let k = if b1 == 0 { (i + j) % m } else { (i + m - j) % m };
        if b1 == 1 && b2 == 1 {
            (0, (k + n) % m)
        } else {
            ((b1 + b2) % 2, k)
        }
    })
    .0
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_multiset(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn cyclic4_orders() {
        assert_eq!(order_multiset(&preset_group("cyclic", Some(4)).unwrap()), vec![1, 2, 4, 4]);
    }

    #[test]
    fn symmetric3_is_nonabelian_of_order_6() {
        let g = preset_group("symmetric3", None).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = quaternion8();
        assert_eq!(order_multiset(&g).iter().filter(|&&o| o == 2).count(), 1);
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral4_has_five_involutions() {
        let g = dihedral(4);
        assert_eq!(order_multiset(&g).iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn unknown_and_unsupported() {
        assert!(matches!(preset_group("frobenius20", None), Err(Error::UnknownPreset(_))));
        assert!(matches!(preset_group("symmetric", Some(5)), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn extra_families() {
        assert_eq!(alternating4().order(), 12);
        assert!(alternating4().center_members().len() == 1);
        let q12 = dicyclic(3);
        assert_eq!(q12.order(), 12);
        assert_eq!(order_multiset(&q12).iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(order_multiset(&dicyclic(2)), order_multiset(&quaternion8()));
    }
}
