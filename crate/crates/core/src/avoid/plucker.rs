use crate::algebra::resultant::{determinant, rank};
use crate::algebra::{FieldElement, FiniteField, MultiPoly};
use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `m`-subsets of `0..n` in lexicographic order.
pub fn column_sets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    if m > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < n - m + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `x<rank>` to column-set names, e.g. `x5 = p23` on `Grass(2,4)`.
pub fn plucker_variable_names(m: usize, n: usize) -> Vec<(String, String)> {
    column_sets(m, n)
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let name: String = s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(if n > 10 { "," } else { "" });
            (format!("x{i}"), format!("p{name}"))
        })
        .collect()
}

fn check_shape(matrix: &[Vec<FieldElement>]) -> Result<(usize, usize)> {
    let m = matrix.len();
    let n = matrix.first().map_or(0, |r| r.len());
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidShape("ragged matrix".into()));
    }
    if m == 0 || m >= n {
        return Err(Error::InvalidShape(format!(
            "Plücker coordinates need 1 <= m < n, got {m}x{n}"
        )));
    }
    Ok((m, n))
}

/// Maximal minors in lexicographic column-set order.
pub fn plucker(field: &FiniteField, matrix: &[Vec<FieldElement>]) -> Result<Vec<FieldElement>> {
    let (m, n) = check_shape(matrix)?;
    if matrix.iter().flatten().any(|&x| !field.contains(x)) {
        return Err(Error::FieldMismatch);
    }
    let r = rank(field, matrix);
    if r < m {
        return Err(Error::RankDeficient { rank: r, expected: m });
    }
    Ok(column_sets(m, n)
        .iter()
        .map(|cols| {
            let sub: Vec<Vec<FieldElement>> = matrix
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            determinant(field, &sub)
        })
        .collect())
}

/// Plücker coordinate for an arbitrary index sequence, extended alternatingly.
fn plucker_seq(field: &FiniteField, n: usize, p: &[FieldElement], seq: &[usize]) -> FieldElement {
    let mut s = seq.to_vec();
    let mut sign = false;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] == s[j + 1] {
                return FieldElement::ZERO;
            }
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = !sign;
            }
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return FieldElement::ZERO;
    }
    let idx = column_sets(s.len(), n).iter().position(|c| *c == s).unwrap();
    if sign {
        field.neg(p[idx])
    } else {
        p[idx]
    }
}

/// Every three-term relation
/// `p(S,a,b) p(S,c,d) - p(S,a,c) p(S,b,d) + p(S,a,d) p(S,b,c) = 0`.
pub fn satisfies_three_term_relations(
    field: &FiniteField,
    m: usize,
    n: usize,
    p: &[FieldElement],
) -> bool {
    if m < 2 || n < 4 {
        return true;
    }
    for s in column_sets(m - 2, n) {
        let rest: Vec<usize> = (0..n).filter(|c| !s.contains(c)).collect();
        for quad in column_sets(4, rest.len()) {
            let [a, b, c, d] = [rest[quad[0]], rest[quad[1]], rest[quad[2]], rest[quad[3]]];
            let pp = |x: usize, y: usize| {
                let mut seq = s.clone();
                seq.push(x);
                seq.push(y);
                plucker_seq(field, n, p, &seq)
            };
            let v = field.add(
                field.sub(field.mul(pp(a, b), pp(c, d)), field.mul(pp(a, c), pp(b, d))),
                field.mul(pp(a, d), pp(b, c)),
            );
            if !v.is_zero() {
                return false;
            }
        }
    }
    true
}

fn permutations(m: usize) -> Vec<(Vec<usize>, bool)> {
    if m == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(m - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, m - 1);
            // moving m-1 from the end to `pos` costs (len - pos) transpositions
            let flips = (perm.len() - pos) % 2 == 1;
            out.push((p, sign ^ flips));
        }
    }
    out
}

/// Plücker coordinates of the cell matrix `[I_m | (a_ij)]` as polynomials in
/// the `m (n - m)` entries `a_ij`, variable `i (n - m) + (j - m)`.
pub(crate) fn cell_minors(field: &FiniteField, m: usize, n: usize) -> Vec<MultiPoly> {
    let nv = m * (n - m);
    let entry = |r: usize, c: usize| -> MultiPoly {
        if c < m {
            if r == c {
                MultiPoly::one(field, nv)
            } else {
                MultiPoly::zero(field, nv)
            }
        } else {
            MultiPoly::var(field, nv, r * (n - m) + (c - m))
        }
    };
    let perms = permutations(m);
    column_sets(m, n)
        .iter()
        .map(|cols| {
            perms.iter().fold(MultiPoly::zero(field, nv), |acc, (perm, odd)| {
                let term = perm
                    .iter()
                    .enumerate()
                    .fold(MultiPoly::one(field, nv), |t, (r, &k)| t.mul(&entry(r, cols[k])));
                if *odd {
                    acc.sub(&term)
                } else {
                    acc.add(&term)
                }
            })
        })
        .collect()
}
