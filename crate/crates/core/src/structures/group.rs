use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::StructureError;

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    // row-major: cayley[a * order + b] = a·b
    cayley: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cayley.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Serializes in the Cayley file format accepted by [`parse_cayley`].
    pub fn to_cayley_text(&self) -> String {
        let mut s = format!("order {}\n", self.order);
        for row in self.cayley.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        let _ = writeln!(s, "identity {}", self.identity);
        s
    }
}

/// Validates a Cayley table.
///
/// Checks run in a fixed order (shape, Latin square, associativity,
/// identity, inverses) and each error names the first violating cell or
/// triple in lexicographic order.
pub fn group_from_cayley(
    table: &[Vec<usize>],
    declared_identity: Option<usize>,
) -> Result<FiniteGroup, StructureError> {
    let order = table.len();
    if order == 0 {
        return Err(StructureError::EmptyGroup);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != order {
            return Err(StructureError::NotSquare {
                row,
                len: r.len(),
                order,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(StructureError::EntryOutOfRange { row, col, value });
        }
    }
    let mut col_seen = vec![vec![false; order]; order];
    for (row, r) in table.iter().enumerate() {
        let mut row_seen = vec![false; order];
        for (col, &v) in r.iter().enumerate() {
            if row_seen[v] || col_seen[col][v] {
                return Err(StructureError::NotLatinSquare { row, col });
            }
            row_seen[v] = true;
            col_seen[col][v] = true;
        }
    }
    let m = |a: usize, b: usize| table[a][b];
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(StructureError::NotAssociative(a, b, c));
                }
            }
        }
    }
    let is_identity = |e: usize| (0..order).all(|x| m(e, x) == x && m(x, e) == x);
    let identity = match declared_identity {
        Some(e) if e < order && is_identity(e) => e,
        Some(e) => return Err(StructureError::WrongIdentity(e)),
        None => (0..order).find(|&e| is_identity(e)).ok_or(StructureError::NoIdentity)?,
    };
    let mut inverses = Vec::with_capacity(order);
    for a in 0..order {
        match (0..order).find(|&b| m(a, b) == identity && m(b, a) == identity) {
            Some(b) => inverses.push(b),
            None => return Err(StructureError::NoInverse(a)),
        }
    }
    Ok(FiniteGroup {
        name: format!("G{order}"),
        order,
        cayley: table.iter().flatten().copied().collect(),
        identity,
        inverses,
    })
}

/// The cyclic group C_n with `a·b = (a+b) mod n`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, StructureError> {
    if n == 0 {
        return Err(StructureError::EmptyGroup);
    }
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    Ok(group_from_cayley(&table, Some(0))?.with_name(format!("C{n}")))
}

/// Permutations of `n` letters in lexicographic order, composed right to left.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup, StructureError> {
    if !(1..=4).contains(&n) {
        return Err(StructureError::OutOfRange {
            what: "symmetric group degree",
            value: n,
            min: 1,
            max: 4,
        });
    }
    let perms = permutations(n);
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                    index_of(&st)
                })
                .collect()
        })
        .collect();
    Ok(group_from_cayley(&table, Some(0))?.with_name(format!("S{n}")))
}

/// The Klein four-group, `a·b = a xor b`.
pub fn klein_four() -> FiniteGroup {
    let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    group_from_cayley(&table, Some(0))
        .expect("xor table is a group")
        .with_name("K4")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Parses the Cayley text format.
///
/// ```text
/// order 3
/// 0 1 2
/// 1 2 0
/// 2 0 1
/// identity 0      # optional
/// ```
///
/// Blank lines and `#` comments are ignored. Malformed input is reported
/// with a 1-based line and column.
pub fn parse_cayley(text: &str) -> Result<FiniteGroup, StructureError> {
    let perr = |line: usize, column: usize, message: String| StructureError::Parse { line, column, message };
    let mut order: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut identity: Option<usize> = None;
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let tokens = tokens_with_columns(content);
        let (first_col, first) = tokens[0];
        match (order, first) {
            (None, "order") => {
                if tokens.len() != 2 {
                    return Err(perr(line_no, first_col, "expected `order <n>`".into()));
                }
                let (c, t) = tokens[1];
                let n: usize = t
                    .parse()
                    .map_err(|_| perr(line_no, c, format!("invalid order `{t}`")))?;
                if n == 0 {
                    return Err(perr(line_no, c, "order must be at least 1".into()));
                }
                order = Some(n);
            }
            (None, _) => {
                return Err(perr(line_no, first_col, "expected `order <n>` header".into()));
            }
            (Some(n), "identity") => {
                if rows.len() != n {
                    return Err(perr(
                        line_no,
                        first_col,
                        format!("identity line before all {n} table rows"),
                    ));
                }
                if identity.is_some() || tokens.len() != 2 {
                    return Err(perr(line_no, first_col, "expected a single `identity <k>`".into()));
                }
                let (c, t) = tokens[1];
                let k: usize = t
                    .parse()
                    .map_err(|_| perr(line_no, c, format!("invalid identity `{t}`")))?;
                if k >= n {
                    return Err(perr(line_no, c, format!("identity {k} is not below order {n}")));
                }
                identity = Some(k);
            }
            (Some(n), _) => {
                if rows.len() == n {
                    return Err(perr(line_no, first_col, format!("more than {n} table rows")));
                }
                if identity.is_some() {
                    return Err(perr(line_no, first_col, "table row after identity line".into()));
                }
                let mut row = Vec::with_capacity(n);
                for &(c, t) in &tokens {
                    let v: usize = t
                        .parse()
                        .map_err(|_| perr(line_no, c, format!("invalid entry `{t}`")))?;
                    if v >= n {
                        return Err(perr(line_no, c, format!("entry {v} is not below order {n}")));
                    }
                    row.push(v);
                }
                if row.len() != n {
                    let col = tokens.last().map_or(1, |(c, t)| c + t.len());
                    return Err(perr(
                        line_no,
                        col,
                        format!("row has {} entries, expected {n}", row.len()),
                    ));
                }
                rows.push(row);
            }
        }
    }
    let n = order.ok_or_else(|| perr(last_line.max(1), 1, "missing `order <n>` header".into()))?;
    if rows.len() != n {
        return Err(perr(
            last_line.max(1),
            1,
            format!("expected {n} table rows, found {}", rows.len()),
        ));
    }
    group_from_cayley(&rows, identity)
}

fn tokens_with_columns(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b + 1, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclic_groups() {
        let c1 = cyclic_group(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.table(), vec![vec![0]]);
        assert_eq!(cyclic_group(2).unwrap().table(), vec![vec![0, 1], vec![1, 0]]);
        let c3 = cyclic_group(3).unwrap();
        for row in c3.table() {
            let mut r = row.clone();
            r.sort();
            assert_eq!(r, vec![0, 1, 2]);
        }
        assert_eq!(cyclic_group(0), Err(StructureError::EmptyGroup));
    }

    #[test]
    fn symmetric_groups() {
        let s2 = symmetric_group(2).unwrap();
        assert_eq!(s2.table(), cyclic_group(2).unwrap().table());
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.center(), vec![s3.identity()]);
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert!(symmetric_group(5).is_err());
        assert!(symmetric_group(0).is_err());
    }

    #[test]
    fn cayley_validation() {
        assert_eq!(group_from_cayley(&[vec![0]], None).unwrap().order(), 1);
        let c2 = group_from_cayley(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(c2.identity(), 0);
        assert_eq!(
            group_from_cayley(&[vec![0, 1], vec![0, 1]], None),
            Err(StructureError::NotLatinSquare { row: 1, col: 0 })
        );
        // x·y = -x-y mod 3 is a Latin square but not associative.
        let quasi: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (6 - x - y) % 3).collect()).collect();
        assert!(matches!(
            group_from_cayley(&quasi, None),
            Err(StructureError::NotAssociative(..))
        ));
        assert_eq!(
            group_from_cayley(&[vec![0, 1], vec![1, 0]], Some(1)),
            Err(StructureError::WrongIdentity(1))
        );
    }

    #[test]
    fn parse_roundtrip_and_diagnostics() {
        let k4 = klein_four();
        let parsed = parse_cayley(&k4.to_cayley_text()).unwrap();
        assert_eq!(parsed.table(), k4.table());
        assert!(parsed.is_abelian());

        let err = parse_cayley("order 2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            StructureError::Parse {
                line: 3,
                column: 3,
                message: "invalid entry `x`".into()
            }
        );
        let err = parse_cayley("# header\n\nrows 2\n").unwrap_err();
        assert!(matches!(err, StructureError::Parse { line: 3, column: 1, .. }));
        let err = parse_cayley("order 2\n0 1\n").unwrap_err();
        assert!(matches!(err, StructureError::Parse { line: 2, .. }));
    }
}
