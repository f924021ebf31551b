//! Cayley digraphs over `Z_n x Z_m`, the lexicographic product with the
//! 2-coclique, and the six classified digraph families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("connection set contains the identity")]
    IdentityInConnection,
    #[error("connection element ({0}, {1}) out of range for Z_{2} x Z_{3}")]
    ElementOutOfRange(usize, usize, usize, usize),
    #[error("connection set does not generate the group: digraph is not strongly connected")]
    NotStronglyConnected,
}

/// A Cayley digraph specification over `Z_n x Z_m` (`m = 1` for cyclic
/// groups). Vertices flatten as `(a, b) -> a * m + b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CayleySpec {
    n: usize,
    m: usize,
    connection: BTreeSet<(usize, usize)>,
}

impl CayleySpec {
    pub fn new(
        n: usize,
        m: usize,
        connection: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CayleyError> {
        if n == 0 || m == 0 {
            return Err(CayleyError::EmptyGroup);
        }
        let mut set = BTreeSet::new();
        for (a, b) in connection {
            if a >= n || b >= m {
                return Err(CayleyError::ElementOutOfRange(a, b, n, m));
            }
            if (a, b) == (0, 0) {
                return Err(CayleyError::IdentityInConnection);
            }
            set.insert((a, b));
        }
        Ok(CayleySpec {
            n,
            m,
            connection: set,
        })
    }

    /// Spec over the cyclic group `Z_n`.
    pub fn cyclic(n: usize, generators: impl IntoIterator<Item = usize>) -> Result<Self, CayleyError> {
        Self::new(n, 1, generators.into_iter().map(|s| (s, 0)))
    }

    pub fn group_order(&self) -> usize {
        self.n * self.m
    }

    pub fn connection(&self) -> &BTreeSet<(usize, usize)> {
        &self.connection
    }

    /// Builds the Cayley digraph: an arc from every vertex `x` to `x + s`
    /// for each `s` in the connection set, componentwise mod `(n, m)`.
    /// Fails when the connection set does not generate the group as a
    /// semigroup, i.e. when the digraph is not strongly connected.
    pub fn digraph(&self) -> Result<Digraph, CayleyError> {
        let (n, m) = (self.n, self.m);
        let mut arcs = Vec::with_capacity(n * m * self.connection.len());
        for a in 0..n {
            for b in 0..m {
                for &(sa, sb) in &self.connection {
                    arcs.push((a * m + b, ((a + sa) % n) * m + (b + sb) % m));
                }
            }
        }
        let g = Digraph::from_arc_list(n * m, arcs).expect("identity excluded, so no loops");
        if !g.is_strongly_connected() {
            return Err(CayleyError::NotStronglyConnected);
        }
        Ok(g)
    }
}

impl fmt::Display for CayleySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            let gens: Vec<String> = self.connection.iter().map(|(a, _)| a.to_string()).collect();
            write!(f, "Cay(Z_{}, {{{}}})", self.n, gens.join(", "))
        } else {
            let gens: Vec<String> = self
                .connection
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            write!(f, "Cay(Z_{} x Z_{}, {{{}}})", self.n, self.m, gens.join(", "))
        }
    }
}

/// Lexicographic product with the coclique on 2 vertices: every vertex is
/// doubled, `(v, t) -> 2v + t`, and `(u, s) -> (v, t)` is an arc exactly when
/// `u -> v` is. No arcs run between the two copies of a vertex.
pub fn lex_coclique2(g: &Digraph) -> Digraph {
    let n = g.order();
    let mut arcs = Vec::with_capacity(4 * g.arc_count());
    for (u, v) in g.arcs() {
        for s in 0..2 {
            for t in 0..2 {
                arcs.push((2 * u + s, 2 * v + t));
            }
        }
    }
    Digraph::from_arc_list(2 * n, arcs).expect("doubling a simple digraph stays simple")
}

/// The exponent/offset pair used by family V connection sets, computed with
/// exact rational arithmetic. `alpha` is 0 when `gcd(q-1, 4) = 4` and -1
/// otherwise; `beta` may be a half-integer.
pub fn alpha_beta(q: usize) -> (i64, Rational64) {
    assert!(q >= 3, "family V parameters start at q = 3");
    let g = (q as i64 - 1).gcd(&4);
    let ratio = Rational64::new(2, g);
    let alpha_rat = (ratio - ratio.floor()) * 2 - 1;
    assert!(alpha_rat.is_integer(), "alpha formula yields an integer");
    let alpha = alpha_rat.to_integer();
    let two_pow_alpha = pow2(alpha);
    let beta = two_pow_alpha * Rational64::from_integer(alpha) * Rational64::new(1 - q as i64, g);
    (alpha, beta)
}

fn pow2(e: i64) -> Rational64 {
    if e >= 0 {
        Rational64::from_integer(1i64 << e)
    } else {
        Rational64::new(1, 1i64 << (-e))
    }
}

/// One of the six classified families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyVariant {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl FamilyVariant {
    pub const ALL: [FamilyVariant; 6] = [
        FamilyVariant::I,
        FamilyVariant::II,
        FamilyVariant::III,
        FamilyVariant::IV,
        FamilyVariant::V,
        FamilyVariant::VI,
    ];

    /// Smallest admissible parameter: 2 for the cyclic pair, 3 otherwise.
    pub fn min_parameter(self) -> usize {
        match self {
            FamilyVariant::I | FamilyVariant::II => 2,
            _ => 3,
        }
    }

    /// Number of vertices of the family member with the given parameter.
    pub fn order(self, param: usize) -> usize {
        match self {
            FamilyVariant::I => param,
            FamilyVariant::II => 2 * param,
            FamilyVariant::III => 2 * param - 2,
            FamilyVariant::IV => 4 * param - 4,
            FamilyVariant::V => 4 * (param - 1),
            FamilyVariant::VI => 8 * (param - 1),
        }
    }
}

impl fmt::Display for FamilyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyVariant::I => "i",
            FamilyVariant::II => "ii",
            FamilyVariant::III => "iii",
            FamilyVariant::IV => "iv",
            FamilyVariant::V => "v",
            FamilyVariant::VI => "vi",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(FamilyVariant::I),
            "ii" | "2" => Ok(FamilyVariant::II),
            "iii" | "3" => Ok(FamilyVariant::III),
            "iv" | "4" => Ok(FamilyVariant::IV),
            "v" | "5" => Ok(FamilyVariant::V),
            "vi" | "6" => Ok(FamilyVariant::VI),
            other => Err(format!("unknown family `{other}` (expected i..vi)")),
        }
    }
}

/// A family member: the variant plus its parameter (`p` for I/II, `q` for
/// III..VI).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyId {
    pub variant: FamilyVariant,
    pub param: usize,
}

impl FamilyId {
    pub fn new(variant: FamilyVariant, param: usize) -> Self {
        FamilyId { variant, param }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.variant, self.param)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family {0} requires parameter >= {1}, got {2}")]
    ParameterTooSmall(FamilyVariant, usize, usize),
    #[error("connection coordinate {0} for q = {1} is not an integer")]
    Integrality(Rational64, usize),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

/// The family V specification `Cay(Z_{2^(a+1)(q-1)} x Z_{2^(1-a)}, ...)` with
/// connection set `{(2^a + b, 1), (2^a - b, a), (2^(a+1), a + 1)}`, first
/// coordinates reduced mod the first factor and second coordinates mod the
/// second. Fractional intermediates are carried exactly and must cancel.
pub fn family_v_spec(q: usize) -> Result<CayleySpec, FamilyError> {
    if q < 3 {
        return Err(FamilyError::ParameterTooSmall(FamilyVariant::V, 3, q));
    }
    let (alpha, beta) = alpha_beta(q);
    let n1 = (pow2(alpha + 1) * Rational64::from_integer(q as i64 - 1))
        .to_integer() as usize;
    let m1 = pow2(1 - alpha).to_integer() as usize;
    assert_eq!(n1 * m1, 4 * (q - 1), "group order identity");

    let first = |value: Rational64| -> Result<usize, FamilyError> {
        if !value.is_integer() {
            return Err(FamilyError::Integrality(value, q));
        }
        Ok(value.to_integer().rem_euclid(n1 as i64) as usize)
    };
    let second = |value: i64| value.rem_euclid(m1 as i64) as usize;

    let two_pow_alpha = pow2(alpha);
    let c1 = (first(two_pow_alpha + beta)?, second(1));
    let c2 = (first(two_pow_alpha - beta)?, second(alpha));
    let c3 = (first(pow2(alpha + 1))?, second(alpha + 1));
    Ok(CayleySpec::new(n1, m1, [c1, c2, c3])?)
}

/// Builds a member of one of the six families.
pub fn build_family(id: FamilyId) -> Result<Digraph, FamilyError> {
    let FamilyId { variant, param } = id;
    let min = variant.min_parameter();
    if param < min {
        return Err(FamilyError::ParameterTooSmall(variant, min, param));
    }
    let g = match variant {
        FamilyVariant::I => CayleySpec::cyclic(param, [1])?.digraph()?,
        FamilyVariant::II => lex_coclique2(&build_family(FamilyId::new(FamilyVariant::I, param))?),
        FamilyVariant::III => CayleySpec::cyclic(2 * param - 2, [1, 2])?.digraph()?,
        FamilyVariant::IV => {
            lex_coclique2(&build_family(FamilyId::new(FamilyVariant::III, param))?)
        }
        FamilyVariant::V => family_v_spec(param)?.digraph()?,
        FamilyVariant::VI => lex_coclique2(&build_family(FamilyId::new(FamilyVariant::V, param))?),
    };
    debug_assert_eq!(g.order(), variant.order(param));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_specs_build_directed_cycles() {
        let g = CayleySpec::cyclic(5, [1]).unwrap().digraph().unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.arc_count(), 5);
        assert!(g.has_arc(4, 0));
    }

    #[test]
    fn rejects_identity_and_out_of_range() {
        assert_eq!(
            CayleySpec::cyclic(4, [0]),
            Err(CayleyError::IdentityInConnection)
        );
        assert_eq!(
            CayleySpec::new(4, 2, [(4, 0)]),
            Err(CayleyError::ElementOutOfRange(4, 0, 4, 2))
        );
    }

    #[test]
    fn rejects_non_generating_connection_sets() {
        assert_eq!(
            CayleySpec::cyclic(4, [2]).unwrap().digraph(),
            Err(CayleyError::NotStronglyConnected)
        );
    }

    #[test]
    fn family_v_spec_at_small_q() {
        let spec = family_v_spec(5).unwrap();
        assert_eq!(spec, CayleySpec::new(8, 2, [(1, 1), (1, 0), (2, 1)]).unwrap());

        let spec = family_v_spec(4).unwrap();
        assert_eq!(spec, CayleySpec::new(3, 4, [(2, 1), (2, 3), (1, 0)]).unwrap());

        let spec = family_v_spec(3).unwrap();
        assert_eq!(spec, CayleySpec::new(2, 4, [(1, 1), (0, 3), (1, 0)]).unwrap());
    }

    #[test]
    fn alpha_beta_values() {
        assert_eq!(alpha_beta(5), (0, Rational64::from_integer(0)));
        assert_eq!(alpha_beta(4), (-1, Rational64::new(3, 2)));
        assert_eq!(alpha_beta(3), (-1, Rational64::new(1, 2)));
    }

    #[test]
    fn lex_coclique2_doubles_everything() {
        let cycle3 = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let doubled = lex_coclique2(&cycle3);
        assert_eq!(doubled.order(), 6);
        assert_eq!(doubled.arc_count(), 12);
        assert!(!doubled.has_arc(0, 1), "no arcs inside a fibre");
        assert!(doubled.has_arc(0, 2) && doubled.has_arc(0, 3) && doubled.has_arc(1, 2));
        for v in 0..doubled.order() {
            assert_eq!(doubled.out_degree(v), 2);
        }
    }

    #[test]
    fn lex_coclique2_agrees_with_product_group_encoding() {
        // Doubling Cay(Z_p, S) is the Cayley digraph of Z_p x Z_2 over S x Z_2,
        // and the vertex flattenings coincide.
        for p in [3usize, 5] {
            let doubled = lex_coclique2(&CayleySpec::cyclic(p, [1]).unwrap().digraph().unwrap());
            let product = CayleySpec::new(p, 2, [(1, 0), (1, 1)])
                .unwrap()
                .digraph()
                .unwrap();
            assert_eq!(doubled, product);
        }
    }

    #[test]
    fn family_orders_and_valencies() {
        let expected_valency = [1usize, 2, 2, 4, 3, 6];
        for (variant, &valency) in FamilyVariant::ALL.iter().zip(&expected_valency) {
            for param in variant.min_parameter()..=6 {
                let g = build_family(FamilyId::new(*variant, param)).unwrap();
                assert_eq!(g.order(), variant.order(param), "{variant}({param})");
                for v in 0..g.order() {
                    assert_eq!(g.out_degree(v), valency, "{variant}({param})");
                }
                assert!(g.is_strongly_connected());
            }
        }
    }

    #[test]
    fn rejects_parameters_below_minimum() {
        assert!(matches!(
            build_family(FamilyId::new(FamilyVariant::I, 1)),
            Err(FamilyError::ParameterTooSmall(FamilyVariant::I, 2, 1))
        ));
        assert!(matches!(
            build_family(FamilyId::new(FamilyVariant::III, 2)),
            Err(FamilyError::ParameterTooSmall(FamilyVariant::III, 3, 2))
        ));
        assert!(matches!(
            build_family(FamilyId::new(FamilyVariant::V, 2)),
            Err(FamilyError::ParameterTooSmall(FamilyVariant::V, 3, 2))
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(CayleySpec::cyclic(6, [1, 2]).unwrap().to_string(), "Cay(Z_6, {1, 2})");
        assert_eq!(
            family_v_spec(5).unwrap().to_string(),
            "Cay(Z_8 x Z_2, {(1,0), (1,1), (2,1)})"
        );
        assert_eq!(FamilyId::new(FamilyVariant::III, 4).to_string(), "iii(4)");
        assert_eq!("vi".parse::<FamilyVariant>(), Ok(FamilyVariant::VI));
    }
}
