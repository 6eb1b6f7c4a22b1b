//! Classification of irreducible factors against the catalogue of
//! irreducible Hermitian symmetric spaces of non-compact type.
//!
//! Each factor is identified by the triple
//! `(complex dimension, real dimension of the compact part, real rank)`.
//! The catalogue rows are
//!
//! | family      | complex dim  | compact dim   | rank     | constraint |
//! |-------------|--------------|---------------|----------|------------|
//! | A III (p,q) | `pq`         | `p²+q²−1`     | `p`      | `1≤p≤q`    |
//! | BD I (p,2)  | `p`          | `p(p−1)/2+1`  | `2`      | `p≥3`      |
//! | D III (n)   | `n(n−1)/2`   | `n²`          | `⌊n/2⌋`  | `n≥3`      |
//! | C I (n)     | `n(n+1)/2`   | `n²`          | `n`      | `n≥1`      |
//! | E III       | `16`         | `46`          | `2`      |            |
//! | E VII       | `27`         | `79`          | `3`      |            |
//!
//! The triple separates all rows except for the classical low-dimensional
//! isomorphisms, which are listed explicitly and reported as aliases of one
//! canonical label, and one genuine coincidence — `(28, 64, 4)` is matched
//! by both A III (4,7) and D III (8), which are *not* isomorphic — which is
//! reported as an error rather than resolved arbitrarily.  A triple with no
//! catalogue match is likewise an error, never a guess.

use std::fmt;

use crate::error::{Error, Result};

/// Catalogue family, in canonical-preference order: when several rows match
/// one triple and are genuinely isomorphic, the earliest family becomes the
/// canonical label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    AIII,
    CI,
    DIII,
    BDI,
    EIII,
    EVII,
}

/// A classified space: canonical family and parameters, display text, and
/// any isomorphic catalogue rows matching the same triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceLabel {
    pub family: Family,
    pub params: Vec<u32>,
    pub display: String,
    pub aliases: Vec<SpaceLabel>,
}

/// One catalogue row with its three invariants evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueRow {
    pub family: Family,
    pub params: Vec<u32>,
    pub dim_c: u32,
    pub k_dim: u32,
    pub rank: u32,
}

impl CatalogueRow {
    fn new(family: Family, params: Vec<u32>) -> Self {
        let (dim_c, k_dim, rank) = match (family, params.as_slice()) {
            (Family::AIII, [p, q]) => (p * q, p * p + q * q - 1, *p),
            (Family::BDI, [p, 2]) => (*p, p * (p - 1) / 2 + 1, 2),
            (Family::DIII, [n]) => (n * (n - 1) / 2, n * n, n / 2),
            (Family::CI, [n]) => (n * (n + 1) / 2, n * n, *n),
            (Family::EIII, []) => (16, 46, 2),
            (Family::EVII, []) => (27, 79, 3),
            _ => panic!("malformed catalogue parameters"),
        };
        CatalogueRow {
            family,
            params,
            dim_c,
            k_dim,
            rank,
        }
    }

    fn triple(&self) -> (u32, u32, u32) {
        (self.dim_c, self.k_dim, self.rank)
    }
}

/// Subscript rendering for display names.
fn subscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn display_of(family: Family, params: &[u32]) -> String {
    match (family, params) {
        // The unit-ball and Siegel-space identifications.
        (Family::AIII, [1, q]) => format!("B{}(ℂ)", subscript(*q)),
        (Family::AIII, [p, q]) => format!("AIII({p},{q})"),
        (Family::CI, [n]) => format!("𝔖{}", subscript(*n)),
        (Family::BDI, [p, q]) => format!("BDI({p},{q})"),
        (Family::DIII, [n]) => format!("DIII({n})"),
        (Family::EIII, _) => "EIII".to_string(),
        (Family::EVII, _) => "EVII".to_string(),
        _ => unreachable!("malformed parameters"),
    }
}

/// The classical isomorphic coincidences: every unordered pair of catalogue
/// rows matching one triple must appear here, or the triple is ambiguous.
const KNOWN_ISOMORPHIC: [((Family, &[u32]), (Family, &[u32])); 5] = [
    ((Family::AIII, &[1, 1]), (Family::CI, &[1])),
    ((Family::CI, &[2]), (Family::BDI, &[3, 2])),
    ((Family::AIII, &[1, 3]), (Family::DIII, &[3])),
    ((Family::AIII, &[2, 2]), (Family::BDI, &[4, 2])),
    ((Family::DIII, &[4]), (Family::BDI, &[6, 2])),
];

fn is_known_isomorphic(a: &CatalogueRow, b: &CatalogueRow) -> bool {
    let key = |r: &CatalogueRow| (r.family, r.params.clone());
    let (ka, kb) = (key(a), key(b));
    KNOWN_ISOMORPHIC.iter().any(|((f1, p1), (f2, p2))| {
        let k1 = (*f1, p1.to_vec());
        let k2 = (*f2, p2.to_vec());
        (ka == k1 && kb == k2) || (ka == k2 && kb == k1)
    })
}

/// All catalogue rows matching the triple, found by inverting the dimension
/// formulas (no enumeration bound involved).
fn matching_rows(dim_c: u32, k_dim: u32, rank: u32) -> Vec<CatalogueRow> {
    let mut rows = Vec::new();
    // A III: p = rank, q = dim_c / p.
    if rank >= 1 && dim_c % rank == 0 {
        let (p, q) = (rank, dim_c / rank);
        if p <= q {
            let row = CatalogueRow::new(Family::AIII, vec![p, q]);
            if row.triple() == (dim_c, k_dim, rank) {
                rows.push(row);
            }
        }
    }
    // C I: n = rank.
    if rank >= 1 {
        let row = CatalogueRow::new(Family::CI, vec![rank]);
        if row.triple() == (dim_c, k_dim, rank) {
            rows.push(row);
        }
    }
    // D III: n(n-1)/2 = dim_c.
    {
        let mut n = 3;
        while n * (n - 1) / 2 < dim_c {
            n += 1;
        }
        if n * (n - 1) / 2 == dim_c && n >= 3 {
            let row = CatalogueRow::new(Family::DIII, vec![n]);
            if row.triple() == (dim_c, k_dim, rank) {
                rows.push(row);
            }
        }
    }
    // BD I: p = dim_c, q = 2.
    if dim_c >= 3 {
        let row = CatalogueRow::new(Family::BDI, vec![dim_c, 2]);
        if row.triple() == (dim_c, k_dim, rank) {
            rows.push(row);
        }
    }
    for family in [Family::EIII, Family::EVII] {
        let row = CatalogueRow::new(family, vec![]);
        if row.triple() == (dim_c, k_dim, rank) {
            rows.push(row);
        }
    }
    rows.sort_by_key(|r| (r.family, r.params.clone()));
    rows
}

/// Classify a factor by its exact invariants.  A unique match (up to the
/// known isomorphisms) yields the canonical label with aliases attached; no
/// match or a genuinely ambiguous match is an error.
pub fn classify_factor(dim_c: u32, k_dim: u32, rank: u32) -> Result<SpaceLabel> {
    if dim_c < 1 || k_dim < 1 || rank < 1 {
        return Err(Error::Unclassified(dim_c, k_dim, rank));
    }
    let rows = matching_rows(dim_c, k_dim, rank);
    if rows.is_empty() {
        return Err(Error::Unclassified(dim_c, k_dim, rank));
    }
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if !is_known_isomorphic(a, b) {
                return Err(Error::AmbiguousTriple(dim_c, k_dim, rank));
            }
        }
    }
    let canonical = &rows[0];
    let aliases = rows[1..]
        .iter()
        .map(|r| SpaceLabel {
            family: r.family,
            params: r.params.clone(),
            display: display_of(r.family, &r.params),
            aliases: Vec::new(),
        })
        .collect();
    Ok(SpaceLabel {
        family: canonical.family,
        params: canonical.params.clone(),
        display: display_of(canonical.family, &canonical.params),
        aliases,
    })
}

impl SpaceLabel {
    /// Complex dimension recovered from the catalogue formulas.
    pub fn dim_c(&self) -> u32 {
        CatalogueRow::new(self.family, self.params.clone()).dim_c
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display)
    }
}

/// Deterministic product label: factors sorted by complex dimension, then
/// family, then parameters, joined with `×`.
pub fn compose_label(factors: &[SpaceLabel]) -> String {
    assert!(!factors.is_empty(), "a product of zero factors has no label");
    let mut sorted: Vec<&SpaceLabel> = factors.iter().collect();
    sorted.sort_by_key(|l| (l.dim_c(), l.family, l.params.clone()));
    sorted
        .iter()
        .map(|l| l.display.clone())
        .collect::<Vec<_>>()
        .join("×")
}

/// Every catalogue row with complex dimension at most `max_dim`.
pub fn enumerate_catalogue(max_dim: u32) -> Vec<CatalogueRow> {
    let mut rows = Vec::new();
    for p in 1..=max_dim {
        for q in p..=max_dim {
            if p * q > max_dim {
                break;
            }
            rows.push(CatalogueRow::new(Family::AIII, vec![p, q]));
        }
    }
    for p in 3..=max_dim {
        rows.push(CatalogueRow::new(Family::BDI, vec![p, 2]));
    }
    let mut n = 3;
    while n * (n - 1) / 2 <= max_dim {
        rows.push(CatalogueRow::new(Family::DIII, vec![n]));
        n += 1;
    }
    let mut n = 1;
    while n * (n + 1) / 2 <= max_dim {
        rows.push(CatalogueRow::new(Family::CI, vec![n]));
        n += 1;
    }
    for family in [Family::EIII, Family::EVII] {
        let row = CatalogueRow::new(family, vec![]);
        if row.dim_c <= max_dim {
            rows.push(row);
        }
    }
    rows
}

/// Decode a subscript-digit run.
fn parse_subscript(s: &str) -> Option<u32> {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    if s.is_empty() {
        return None;
    }
    let mut value = 0u32;
    for c in s.chars() {
        let d = DIGITS.iter().position(|&x| x == c)? as u32;
        value = value.checked_mul(10)?.checked_add(d)?;
    }
    Some(value)
}

/// Complex dimension promised by a product-label string such as
/// `"B₁(ℂ)×𝔖₃"`, or `None` when the text is not a recognisable label.
/// Used to cross-check published labels against computed dimensions.
pub fn parse_label_dimension(text: &str) -> Option<u32> {
    let mut total = 0u32;
    for token in text.split('×') {
        let token = token.trim();
        // "BDI(" must be tried before the bare unit-ball prefix "B".
        let dim = if let Some(args) = token.strip_prefix("BDI(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = args.split_once(',')?;
            if q.trim() != "2" {
                return None;
            }
            p.trim().parse::<u32>().ok()?
        } else if let Some(rest) = token.strip_prefix('B') {
            let sub = rest.strip_suffix("(ℂ)")?;
            parse_subscript(sub)?
        } else if let Some(sub) = token.strip_prefix("𝔖") {
            let n = parse_subscript(sub)?;
            n * (n + 1) / 2
        } else if let Some(args) = token.strip_prefix("AIII(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = args.split_once(',')?;
            p.trim().parse::<u32>().ok()? * q.trim().parse::<u32>().ok()?
        } else if let Some(arg) = token.strip_prefix("DIII(").and_then(|r| r.strip_suffix(')')) {
            let n = arg.trim().parse::<u32>().ok()?;
            n * (n - 1) / 2
        } else if token == "EIII" {
            16
        } else if token == "EVII" {
            27
        } else {
            return None;
        };
        total = total.checked_add(dim)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn pinned_classifications() {
        let l = classify_factor(2, 4, 1).unwrap();
        assert_eq!(l.family, Family::AIII);
        assert_eq!(l.params, vec![1, 2]);
        assert_eq!(l.display, "B₂(ℂ)");
        assert!(l.aliases.is_empty());

        let l = classify_factor(3, 9, 1).unwrap();
        assert_eq!(l.display, "B₃(ℂ)");
        assert_eq!(l.aliases.len(), 1);
        assert_eq!(l.aliases[0].family, Family::DIII);
        assert_eq!(l.aliases[0].params, vec![3]);

        let l = classify_factor(3, 4, 2).unwrap();
        assert_eq!(l.family, Family::CI);
        assert_eq!(l.display, "𝔖₂");
        assert_eq!(l.aliases.len(), 1);
        assert_eq!(l.aliases[0].display, "BDI(3,2)");

        let l = classify_factor(1, 1, 1).unwrap();
        assert_eq!(l.display, "B₁(ℂ)");
        assert_eq!(l.aliases.len(), 1);
        assert_eq!(l.aliases[0].display, "𝔖₁");

        // Bigger spaces reachable only in principle.
        assert_eq!(classify_factor(16, 46, 2).unwrap().display, "EIII");
        assert_eq!(classify_factor(27, 79, 3).unwrap().display, "EVII");
        assert_eq!(classify_factor(6, 12, 2).unwrap().display, "AIII(2,3)");
        assert_eq!(classify_factor(6, 16, 2).unwrap().display, "DIII(4)");
        assert_eq!(classify_factor(5, 11, 2).unwrap().display, "BDI(5,2)");
        assert_eq!(classify_factor(6, 9, 3).unwrap().display, "𝔖₃");
    }

    #[test]
    fn unmatched_and_ambiguous_triples_are_errors() {
        assert!(matches!(
            classify_factor(5, 3, 1),
            Err(Error::Unclassified(5, 3, 1))
        ));
        assert!(matches!(
            classify_factor(2, 4, 0),
            Err(Error::Unclassified(..))
        ));
        // A III (4,7) and D III (8) share (28, 64, 4) but are not
        // isomorphic: the triple cannot be classified honestly.
        assert!(matches!(
            classify_factor(28, 64, 4),
            Err(Error::AmbiguousTriple(28, 64, 4))
        ));
    }

    #[test]
    fn product_labels_are_sorted_and_joined() {
        let disc = classify_factor(1, 1, 1).unwrap();
        assert_eq!(
            compose_label(&[disc.clone(), disc.clone(), disc.clone()]),
            "B₁(ℂ)×B₁(ℂ)×B₁(ℂ)"
        );
        let b2 = classify_factor(2, 4, 1).unwrap();
        assert_eq!(compose_label(&[b2.clone(), disc.clone()]), "B₁(ℂ)×B₂(ℂ)");
        let s2 = classify_factor(3, 4, 2).unwrap();
        assert_eq!(compose_label(&[s2, disc.clone()]), "B₁(ℂ)×𝔖₂");
        assert_eq!(compose_label(&[disc.clone()]), "B₁(ℂ)");
    }

    #[test]
    fn collision_closure_over_the_catalogue() {
        // Group all rows with dim ≤ 200 by triple: every collision must be a
        // known isomorphism, except the single genuine ambiguity (28,64,4).
        let mut groups: BTreeMap<(u32, u32, u32), Vec<CatalogueRow>> = BTreeMap::new();
        for row in enumerate_catalogue(200) {
            groups.entry(row.triple()).or_default().push(row);
        }
        let mut collisions = Vec::new();
        for (triple, rows) in groups {
            if rows.len() < 2 {
                continue;
            }
            assert_eq!(rows.len(), 2, "no triple is matched by three rows");
            if is_known_isomorphic(&rows[0], &rows[1]) {
                collisions.push(triple);
            } else {
                assert_eq!(triple, (28, 64, 4), "the only ambiguous triple");
            }
        }
        assert_eq!(
            collisions,
            vec![(1, 1, 1), (3, 4, 2), (3, 9, 1), (4, 7, 2), (6, 16, 2)]
        );
        // Every known-isomorphic pair really collides (alias table closed).
        for ((f1, p1), (f2, p2)) in KNOWN_ISOMORPHIC {
            let a = CatalogueRow::new(f1, p1.to_vec());
            let b = CatalogueRow::new(f2, p2.to_vec());
            assert_eq!(a.triple(), b.triple());
        }
    }

    #[test]
    fn classification_agrees_with_enumeration() {
        // classify_factor inverts the formulas; cross-check against brute
        // enumeration on every triple with a match.
        for row in enumerate_catalogue(60) {
            let (d, k, r) = row.triple();
            match classify_factor(d, k, r) {
                Ok(label) => {
                    let hit = label.family == row.family && label.params == row.params
                        || label
                            .aliases
                            .iter()
                            .any(|a| a.family == row.family && a.params == row.params);
                    assert!(hit, "row {row:?} must appear as canonical or alias");
                }
                Err(Error::AmbiguousTriple(28, 64, 4)) => {}
                Err(e) => panic!("row {row:?} failed to classify: {e}"),
            }
        }
    }

    #[test]
    fn label_dimension_parser_reads_products() {
        assert_eq!(parse_label_dimension("B₂(ℂ)"), Some(2));
        assert_eq!(parse_label_dimension("𝔖₃"), Some(6));
        assert_eq!(parse_label_dimension("B₁(ℂ)×𝔖₃"), Some(7));
        assert_eq!(parse_label_dimension("B₁(ℂ)×B₁(ℂ)×B₁(ℂ)"), Some(3));
        assert_eq!(parse_label_dimension("B₁(ℂ)×𝔖₂"), Some(4));
        assert_eq!(parse_label_dimension("DIII(4)×EIII"), Some(22));
        assert_eq!(parse_label_dimension("AIII(2,3)"), Some(6));
        assert_eq!(parse_label_dimension("BDI(5,2)"), Some(5));
        assert_eq!(parse_label_dimension(""), None);
        assert_eq!(parse_label_dimension("nonsense"), None);
        assert_eq!(parse_label_dimension("B₂"), None);
    }

    #[test]
    fn subscripts_render_multidigit_numbers() {
        assert_eq!(subscript(12), "₁₂");
        assert_eq!(parse_subscript("₁₂"), Some(12));
        let l = classify_factor(12, 1 + 144 - 1, 1).unwrap();
        assert_eq!(l.display, "B₁₂(ℂ)");
    }
}
