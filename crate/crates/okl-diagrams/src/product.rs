//! The truncated pointwise product on the admissible symbols.
//!
//! Only gradient-lifted symbols and the polynomial symbols may be
//! multiplied; every product whose result would fall outside the truncated
//! basis (equivalently, whose homogeneity is too high to matter for the
//! expansion) is set to zero. The table is commutative, `one` is the unit,
//! and whenever the product is nonzero its homogeneity is the sum of the
//! factors' homogeneities and its parity the product of their parities.

use crate::symbol::{symbol, Kind, TreeSymbol};
use crate::DiagramError;

/// Nonzero entries of the commutative product table, stored with the
/// operands in lexicographic order.
const PRODUCTS: [(&str, &str, &str); 16] = [
    ("lollipop_r", "lollipop_r", "cherry_rr"),
    ("ip_cherry_rr", "lollipop_r", "elk_rrr"),
    ("lollipop_b", "lollipop_r", "cherry_rb"),
    ("ip_elk_rrr", "lollipop_r", "moose"),
    ("ip_cherry_rb", "lollipop_r", "elk_rbr"),
    ("ip_lollipop_r", "lollipop_r", "claw_rr"),
    ("ip_cherry_rr", "ip_cherry_rr", "candelabra"),
    ("ip_cherry_rr", "lollipop_b", "elk_rrb"),
    ("lollipop_b", "lollipop_b", "cherry_bb"),
    ("lollipop_r", "one", "lollipop_r"),
    ("ip_cherry_rr", "one", "ip_cherry_rr"),
    ("lollipop_b", "one", "lollipop_b"),
    ("one", "one", "one"),
    ("ip_elk_rrr", "one", "ip_elk_rrr"),
    ("ip_cherry_rb", "one", "ip_cherry_rb"),
    ("ip_lollipop_r", "one", "ip_lollipop_r"),
];

fn admissible(t: &TreeSymbol) -> bool {
    matches!(t.kind, Kind::Ip | Kind::Poly)
}

/// The truncated product `t1 * t2`; `None` means the product is zero in
/// the truncated basis. Errors if either operand is not in the admissible
/// (gradient-lift or polynomial) set.
pub fn product(t1: &TreeSymbol, t2: &TreeSymbol) -> Result<Option<TreeSymbol>, DiagramError> {
    for t in [t1, t2] {
        if !admissible(t) {
            return Err(DiagramError::InadmissibleOperand(t.name.to_string()));
        }
    }
    // `one` is the unit and `x` annihilates everything except `one`.
    if t1.name == "one" {
        return Ok(Some(t2.clone()));
    }
    if t2.name == "one" {
        return Ok(Some(t1.clone()));
    }
    let (a, b) = if t1.name <= t2.name {
        (t1.name, t2.name)
    } else {
        (t2.name, t1.name)
    };
    Ok(PRODUCTS
        .iter()
        .find(|&&(p, q, _)| p == a && q == b)
        .map(|&(_, _, r)| symbol(r).expect("product table names a known symbol")))
}
