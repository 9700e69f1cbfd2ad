//! The basis symbols of the truncated expansion.
//!
//! Each symbol is a decorated rooted tree built from two generators — the
//! noise bullet and the boundary-potential bullet — the polynomial symbols
//! `one` and `x`, the two integration lifts `I` (heat kernel) and `I'`
//! (spatial gradient of the heat kernel), and pointwise products. The
//! homogeneity of a symbol is a pair `(a, b)` standing for `a + b*kappa`
//! with a fixed small exponent `kappa in (0, 1/100)`:
//!
//! ```text
//! |noise| = (-3/2, -1),   |potential| = (-1, -1),
//! |one| = (0, 0),         |x| = (1, 0),
//! |I tau| = |tau| + (2, 0),   |I' tau| = |tau| + (1, 0),
//! |tau sigma| = |tau| + |sigma|.
//! ```
//!
//! The parity records behaviour under spatial reflection: both bullets and
//! `one` are even, `x` is odd, `I` preserves parity, `I'` flips it, and
//! products multiply it. Both gradings are recomputed from the tree
//! structure; the stored table values must round-trip through the
//! recursion.

use std::cmp::Ordering;
use std::fmt;

/// A reduced rational number with a total order, used for the leading part
/// of a homogeneity. All values arising here are half-integers, but the
/// type does not rely on that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    /// A reduced fraction with positive denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = den.signum();
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Rational {
            num: sign * num / g,
            den: sign.abs() * den.abs() / g,
        }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross multiplication preserves order.
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Homogeneity `a + b*kappa` with `a` rational and `b` an integer count of
/// the symbolic exponent `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Homogeneity {
    /// Leading rational part.
    pub a: Rational,
    /// Coefficient of the symbolic `kappa`.
    pub b: i64,
}

impl Homogeneity {
    pub fn new(a_num: i64, a_den: i64, b: i64) -> Self {
        Homogeneity {
            a: Rational::new(a_num, a_den),
            b,
        }
    }
}

impl std::ops::Add for Homogeneity {
    type Output = Homogeneity;
    fn add(self, rhs: Homogeneity) -> Homogeneity {
        Homogeneity {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl PartialOrd for Homogeneity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Homogeneity {
    /// Total order valid for every `kappa in (0, 1/100)`: the rational part
    /// decides first, the `kappa` coefficient breaks ties. This is exact
    /// here because all rational gaps in the table are at least `1/2` while
    /// `|b| <= 4`, so `|b * kappa| < 1/25` can never flip a strict rational
    /// comparison.
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then(self.b.cmp(&other.b))
    }
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}k", self.a, self.b)
    }
}

/// Rooted-tree structure of a symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    /// The space-time white-noise bullet.
    Noise,
    /// The boundary-potential bullet.
    Potential,
    /// The unit polynomial symbol.
    One,
    /// The linear polynomial symbol.
    X,
    /// Heat-kernel integration of a subtree.
    I(Box<Tree>),
    /// Gradient-of-heat-kernel integration of a subtree.
    Ip(Box<Tree>),
    /// Pointwise product of subtrees at a common node.
    Prod(Vec<Tree>),
}

impl Tree {
    /// Homogeneity by structural recursion.
    pub fn homogeneity(&self) -> Homogeneity {
        match self {
            Tree::Noise => Homogeneity::new(-3, 2, -1),
            Tree::Potential => Homogeneity::new(-1, 1, -1),
            Tree::One => Homogeneity::new(0, 1, 0),
            Tree::X => Homogeneity::new(1, 1, 0),
            Tree::I(t) => t.homogeneity() + Homogeneity::new(2, 1, 0),
            Tree::Ip(t) => t.homogeneity() + Homogeneity::new(1, 1, 0),
            Tree::Prod(ts) => ts
                .iter()
                .fold(Homogeneity::new(0, 1, 0), |acc, t| acc + t.homogeneity()),
        }
    }

    /// Reflection parity by structural recursion: `I` preserves, `I'`
    /// flips, products multiply; bullets and `one` are even, `x` is odd.
    pub fn parity(&self) -> i8 {
        match self {
            Tree::Noise | Tree::Potential | Tree::One => 1,
            Tree::X => -1,
            Tree::I(t) => t.parity(),
            Tree::Ip(t) => -t.parity(),
            Tree::Prod(ts) => ts.iter().map(Tree::parity).product(),
        }
    }

    /// Number of noise bullets in the tree.
    pub fn noise_leaves(&self) -> usize {
        match self {
            Tree::Noise => 1,
            Tree::Potential | Tree::One | Tree::X => 0,
            Tree::I(t) | Tree::Ip(t) => t.noise_leaves(),
            Tree::Prod(ts) => ts.iter().map(Tree::noise_leaves).sum(),
        }
    }
}

/// Syntactic class of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Polynomial symbols `one` and `x`.
    Poly,
    /// The generators `noise` and `potential`.
    Bullet,
    /// A single heat-kernel lift.
    I,
    /// A single gradient lift.
    Ip,
    /// A nontrivial pointwise product.
    Star,
}

/// A named basis symbol with its gradings and structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSymbol {
    /// Canonical identifier.
    pub name: &'static str,
    /// Syntactic class.
    pub kind: Kind,
    /// Stored homogeneity; must equal `structure.homogeneity()`.
    pub homogeneity: Homogeneity,
    /// Stored parity; must equal `structure.parity()`.
    pub parity: i8,
    /// Rooted-tree structure.
    pub structure: Tree,
}

fn ip(t: Tree) -> Tree {
    Tree::Ip(Box::new(t))
}

fn i(t: Tree) -> Tree {
    Tree::I(Box::new(t))
}

fn prod(ts: Vec<Tree>) -> Tree {
    Tree::Prod(ts)
}

/// The structure of a named symbol. Panics on an unknown name.
pub fn structure_of(name: &str) -> Tree {
    use Tree::{Noise, One, Potential, X};
    let lolli_r = || ip(Noise);
    let lolli_b = || ip(Potential);
    let cherry_rr = || prod(vec![lolli_r(), lolli_r()]);
    let cherry_rb = || prod(vec![lolli_r(), lolli_b()]);
    let elk_rrr = || prod(vec![lolli_r(), ip(cherry_rr())]);
    match name {
        "noise" => Noise,
        "potential" => Potential,
        "one" => One,
        "x" => X,
        "lollipop_r" => lolli_r(),
        "lollipop_b" => lolli_b(),
        "balloon_r" => i(Noise),
        "balloon_b" => i(Potential),
        "cherry_rr" => cherry_rr(),
        "cherry_rb" => cherry_rb(),
        "cherry_bb" => prod(vec![lolli_b(), lolli_b()]),
        "i_lollipop_r" => i(lolli_r()),
        "ip_lollipop_r" => ip(lolli_r()),
        "i_cherry_rr" => i(cherry_rr()),
        "ip_cherry_rr" => ip(cherry_rr()),
        "i_cherry_rb" => i(cherry_rb()),
        "ip_cherry_rb" => ip(cherry_rb()),
        "elk_rrr" => elk_rrr(),
        "elk_rrb" => prod(vec![ip(cherry_rr()), lolli_b()]),
        "elk_rbr" => prod(vec![lolli_r(), ip(cherry_rb())]),
        "claw_rr" => prod(vec![lolli_r(), ip(lolli_r())]),
        "i_elk_rrr" => i(elk_rrr()),
        "ip_elk_rrr" => ip(elk_rrr()),
        "candelabra" => prod(vec![ip(cherry_rr()), ip(cherry_rr())]),
        "moose" => prod(vec![lolli_r(), ip(elk_rrr())]),
        other => panic!("unknown symbol name: {other}"),
    }
}

/// Table data: `(name, kind, a_num, a_den, b, parity)`.
const TABLE: [(&str, Kind, i64, i64, i64, i8); 25] = [
    ("noise", Kind::Bullet, -3, 2, -1, 1),
    ("potential", Kind::Bullet, -1, 1, -1, 1),
    ("one", Kind::Poly, 0, 1, 0, 1),
    ("x", Kind::Poly, 1, 1, 0, -1),
    ("lollipop_r", Kind::Ip, -1, 2, -1, -1),
    ("lollipop_b", Kind::Ip, 0, 1, -1, -1),
    ("balloon_r", Kind::I, 1, 2, -1, 1),
    ("balloon_b", Kind::I, 1, 1, -1, 1),
    ("cherry_rr", Kind::Star, -1, 1, -2, 1),
    ("cherry_rb", Kind::Star, -1, 2, -2, 1),
    ("cherry_bb", Kind::Star, 0, 1, -2, 1),
    ("i_lollipop_r", Kind::I, 3, 2, -1, -1),
    ("ip_lollipop_r", Kind::Ip, 1, 2, -1, 1),
    ("i_cherry_rr", Kind::I, 1, 1, -2, 1),
    ("ip_cherry_rr", Kind::Ip, 0, 1, -2, -1),
    ("i_cherry_rb", Kind::I, 3, 2, -2, 1),
    ("ip_cherry_rb", Kind::Ip, 1, 2, -2, -1),
    ("elk_rrr", Kind::Star, -1, 2, -3, 1),
    ("elk_rrb", Kind::Star, 0, 1, -3, 1),
    ("elk_rbr", Kind::Star, 0, 1, -3, 1),
    ("claw_rr", Kind::Star, 0, 1, -2, -1),
    ("i_elk_rrr", Kind::I, 3, 2, -3, 1),
    ("ip_elk_rrr", Kind::Ip, 1, 2, -3, -1),
    ("candelabra", Kind::Star, 0, 1, -4, 1),
    ("moose", Kind::Star, 0, 1, -4, 1),
];

/// All 25 basis symbols with their stored gradings.
pub fn symbol_table() -> Vec<TreeSymbol> {
    TABLE
        .iter()
        .map(|&(name, kind, an, ad, b, parity)| TreeSymbol {
            name,
            kind,
            homogeneity: Homogeneity::new(an, ad, b),
            parity,
            structure: structure_of(name),
        })
        .collect()
}

/// Look up a single symbol by canonical name.
pub fn symbol(name: &str) -> Option<TreeSymbol> {
    symbol_table().into_iter().find(|s| s.name == name)
}

/// Reflection parity of a symbol, recomputed from its structure.
pub fn parity(t: &TreeSymbol) -> i8 {
    t.structure.parity()
}
