use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// A class `d·L + Σ x_i·e_i`, stored as `[d, x_1, …, x_7]`.
///
/// The derived order is lexicographic on that vector, which fixes every
/// enumeration order in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeClass(pub [i64; 8]);

impl LatticeClass {
    pub fn new(d: i64, e: [i64; 7]) -> Self {
        let mut c = [0; 8];
        c[0] = d;
        c[1..].copy_from_slice(&e);
        LatticeClass(c)
    }

    pub const ZERO: LatticeClass = LatticeClass([0; 8]);

    /// `L`.
    pub fn line() -> Self {
        LatticeClass::new(1, [0; 7])
    }

    /// `e_i` for `1 ≤ i ≤ 7`.
    pub fn e(i: usize) -> Self {
        assert!((1..=7).contains(&i), "exceptional index out of range");
        let mut c = [0; 8];
        c[i] = 1;
        LatticeClass(c)
    }

    pub fn coords(&self) -> &[i64; 8] {
        &self.0
    }

    /// The form `diag(1, −1, …, −1)`.
    pub fn dot(&self, other: &LatticeClass) -> i64 {
        self.0[0] * other.0[0] - (1..8).map(|i| self.0[i] * other.0[i]).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// `v/2` when every coordinate is even.
    pub fn halve(&self) -> Option<LatticeClass> {
        if self.0.iter().all(|x| x % 2 == 0) {
            Some(LatticeClass(self.0.map(|x| x / 2)))
        } else {
            None
        }
    }
}

impl Add for LatticeClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        LatticeClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for LatticeClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        LatticeClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for LatticeClass {
    type Output = Self;
    fn neg(self) -> Self {
        LatticeClass(self.0.map(|x| -x))
    }
}

impl Mul<LatticeClass> for i64 {
    type Output = LatticeClass;
    fn mul(self, v: LatticeClass) -> LatticeClass {
        LatticeClass(v.0.map(|x| self * x))
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut term = |c: i64, name: &str| {
            if c == 0 {
                return;
            }
            let sign = if c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}{name}"));
            } else {
                out.push_str(&format!("{sign}{mag}{name}"));
            }
        };
        term(self.0[0], "L");
        for i in 1..8 {
            term(self.0[i], &format!("e{i}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassKind {
    /// `E² = −1`, `E·K = −1`.
    MinusOne,
    /// `R² = −2`, `R·K = 0`.
    Root,
}

impl ClassKind {
    fn norm(self) -> i64 {
        match self {
            ClassKind::MinusOne => -1,
            ClassKind::Root => -2,
        }
    }

    fn k_degree(self) -> i64 {
        match self {
            ClassKind::MinusOne => -1,
            ClassKind::Root => 0,
        }
    }
}

/// Picard lattice of a weak del Pezzo surface of degree 2, viewed as the blowup
/// of the plane in seven points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Dp2Lattice;

impl Dp2Lattice {
    pub const RANK: usize = 8;

    pub fn canonical(&self) -> LatticeClass {
        LatticeClass::new(-3, [1; 7])
    }

    /// All classes of the given kind, in lexicographic order.
    ///
    /// With `Σx_i = −3d − E·K` and `Σx_i² = d² − E²`, Cauchy–Schwarz
    /// `(Σx_i)² ≤ 7Σx_i²` gives `0 ≤ d ≤ 3` for (−1)-classes and `|d| ≤ 2` for
    /// roots, and then `x_i² ≤ d² − E²` keeps every coordinate within
    /// `|d| + 1`. The box searched here contains all solutions.
    pub fn enumerate_classes(&self, kind: ClassKind) -> Vec<LatticeClass> {
        let norm = kind.norm();
        let kdeg = kind.k_degree();
        let mut found = Vec::new();
        for d in -3i64..=3 {
            // Σ x_i² = d² − norm
            let target = d * d - norm;
            let bound = d.abs() + 1;
            let mut x = [0i64; 7];
            search(0, target, bound, &mut x, &mut |x| {
                let v = LatticeClass::new(d, *x);
                if v.dot(&self.canonical()) == kdeg {
                    found.push(v);
                }
            });
        }
        found.sort();
        found
    }

    /// Cached `enumerate_classes(MinusOne)`.
    pub fn minus_one_classes(&self) -> &'static [LatticeClass] {
        static CACHE: OnceLock<Vec<LatticeClass>> = OnceLock::new();
        CACHE.get_or_init(|| Dp2Lattice.enumerate_classes(ClassKind::MinusOne))
    }

    /// Cached `enumerate_classes(Root)`.
    pub fn roots(&self) -> &'static [LatticeClass] {
        static CACHE: OnceLock<Vec<LatticeClass>> = OnceLock::new();
        CACHE.get_or_init(|| Dp2Lattice.enumerate_classes(ClassKind::Root))
    }

    pub fn is_minus_one(&self, v: &LatticeClass) -> bool {
        v.square() == -1 && v.dot(&self.canonical()) == -1
    }

    pub fn is_root(&self, v: &LatticeClass) -> bool {
        v.square() == -2 && v.dot(&self.canonical()) == 0
    }

    /// Reflection in the hyperplane orthogonal to a root: `x ↦ x + (x·r)·r`.
    pub fn reflect(&self, root: &LatticeClass, x: &LatticeClass) -> LatticeClass {
        *x + x.dot(root) * *root
    }
}

fn search(
    i: usize,
    remaining: i64,
    bound: i64,
    x: &mut [i64; 7],
    emit: &mut impl FnMut(&[i64; 7]),
) {
    if i == 7 {
        if remaining == 0 {
            emit(x);
        }
        return;
    }
    for v in -bound..=bound {
        let sq = v * v;
        if sq > remaining {
            continue;
        }
        x[i] = v;
        search(i + 1, remaining - sq, bound, x, emit);
    }
    x[i] = 0;
}
