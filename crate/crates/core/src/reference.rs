//! Published reference values, embedded from `data/*.tsv`.
//!
//! Each file starts with `#` comments naming the table, its rows and its
//! columns; the remaining lines are tab-separated values.

const TABLE_I: &str = include_str!("../data/table_i.tsv");
const TABLE_II: &str = include_str!("../data/table_ii.tsv");
const TABLE_III: &str = include_str!("../data/table_iii.tsv");
const TABLE_LIJ: &str = include_str!("../data/table_lij.tsv");
const TABLE_V: &str = include_str!("../data/table_v.tsv");

fn rows(src: &'static str) -> impl Iterator<Item = Vec<&'static str>> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').collect())
}

fn num<T: std::str::FromStr>(s: &str) -> T
where
    T::Err: std::fmt::Debug,
{
    s.parse().expect("embedded tables are well formed")
}

/// Header comments of an embedded table.
pub fn provenance(src: &str) -> Vec<&str> {
    src.lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| l.trim_start_matches('#').trim())
        .collect()
}

/// `(m, u_m)`.
pub fn necklace_counts() -> Vec<(usize, u64)> {
    rows(TABLE_I).map(|r| (num(r[0]), num(r[1]))).collect()
}

/// `(m, N, vertex count)`.
pub fn vertex_counts() -> Vec<(usize, usize, u64)> {
    rows(TABLE_II)
        .map(|r| (num(r[0]), num(r[1]), num(r[2])))
        .collect()
}

/// `(N, L_N^{(4)})`.
pub fn m4_local_bounds() -> Vec<(usize, u64)> {
    rows(TABLE_III).map(|r| (num(r[0]), num(r[1]))).collect()
}

/// `(i, j, L_{i,j})`.
pub fn lij_values() -> Vec<(u32, u32, u64)> {
    rows(TABLE_LIJ)
        .map(|r| (num(r[0]), num(r[1]), num(r[2])))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityEntry {
    pub m: usize,
    pub n: usize,
    pub value: f64,
    /// Digits as printed.
    pub printed: &'static str,
    /// Whether the local bound behind the value was established exactly.
    pub certified: bool,
}

pub fn visibilities() -> Vec<VisibilityEntry> {
    rows(TABLE_V)
        .map(|r| VisibilityEntry {
            m: num(r[0]),
            n: num(r[1]),
            value: num(r[2]),
            printed: r[2],
            certified: r[3] == "certified",
        })
        .collect()
}

pub fn visibility(m: usize, n: usize) -> Option<VisibilityEntry> {
    visibilities().into_iter().find(|e| e.m == m && e.n == n)
}

/// Header comments for a table id (`I`, `II`, `III`, `V`, `Lij`).
pub fn table_provenance(id: &str) -> Option<Vec<&'static str>> {
    let src = match id {
        "I" => TABLE_I,
        "II" => TABLE_II,
        "III" => TABLE_III,
        "V" => TABLE_V,
        "Lij" => TABLE_LIJ,
        _ => return None,
    };
    Some(provenance(src))
}
