//! Text formats.
//!
//! `SSET v1`:
//!
//! ```text
//! SSET v1 maxdim=1
//! dim 0: v0 v1
//! dim 1:
//! e : d0=v1 d1=v0
//! ```
//!
//! `BSSET v1` lists generators by bidegree `(p, q)` in lexicographic order,
//! with horizontal faces `h<j>` and vertical faces `v<j>`. References read
//! `s<j>…t<j>…<id>`, horizontal degeneracies first:
//!
//! ```text
//! BSSET v1 hmax=1 vmax=0
//! bidim 0 0: a b
//! bidim 1 0:
//! e : h0=b h1=a
//! ```
//!
//! Container files (`MAP v1`, `PROBLEM v1`, ...) hold named simplicial sets,
//! maps between them and single-line metadata:
//!
//! ```text
//! MAP v1
//! set domain
//! SSET v1 maxdim=0
//! dim 0: p
//! end
//! set codomain
//! ...
//! end
//! map f domain codomain
//! p = v1
//! end
//! meta note free text
//! ```
//!
//! Blank lines and lines starting with `#` are ignored by every parser.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bisimp::{BiGen, BiRef, BiSimplicialSet, BiSimplicialSetBuilder};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::{Gen, SimplexRef};
use crate::sset::{split_degeneracy_word, SimplicialSet, SimplicialSetBuilder};

fn column_of(line: &str, token: &str) -> usize {
    let base = line.as_ptr() as usize;
    let at = token.as_ptr() as usize;
    if at >= base && at <= base + line.len() {
        at - base + 1
    } else {
        1
    }
}

fn significant(line: &str) -> bool {
    let t = line.trim();
    !t.is_empty() && !t.starts_with('#')
}

fn resolve_ref(
    text: &str,
    lookup: impl Fn(&str) -> Option<Gen>,
) -> std::result::Result<SimplexRef, String> {
    let (word, id) = split_degeneracy_word(text)?;
    let gen = lookup(id).ok_or_else(|| format!("unknown generator `{id}`"))?;
    if word.windows(2).any(|w| w[0] <= w[1]) {
        return Err(format!("degeneracy word in `{text}` is not strictly decreasing"));
    }
    SimplexRef::from_word(gen, &word).ok_or_else(|| format!("degeneracy index out of range in `{text}`"))
}

/// Serializes in canonical `SSET v1` form.
pub fn write_sset(s: &SimplicialSet) -> String {
    let mut out = format!("SSET v1 maxdim={}\n", s.max_dim());
    out.push_str("dim 0:");
    for g in s.gens(0) {
        out.push(' ');
        out.push_str(s.name(g));
    }
    out.push('\n');
    for k in 1..=s.max_dim() {
        out.push_str(&format!("dim {k}:\n"));
        for g in s.gens(k) {
            out.push_str(s.name(g));
            out.push_str(" :");
            for (j, &f) in s.gen_faces(g).iter().enumerate() {
                out.push_str(&format!(" d{j}={}", s.ref_to_string(f)));
            }
            out.push('\n');
        }
    }
    out
}

/// Parses `SSET v1`, reporting the first offending line and column.
pub fn parse_sset(text: &str) -> Result<SimplicialSet> {
    let lines: Vec<&str> = text.lines().collect();
    parse_sset_lines(&lines, 0)
}

fn parse_sset_lines(lines: &[&str], offset: usize) -> Result<SimplicialSet> {
    let mut iter = lines.iter().enumerate().filter(|(_, l)| significant(l));
    let (hline, header) = iter.next().ok_or_else(|| Error::parse(offset + 1, 1, "missing header"))?;
    let hno = offset + hline + 1;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("SSET") || parts.next() != Some("v1") {
        return Err(Error::parse(hno, 1, "expected `SSET v1 maxdim=<d>`"));
    }
    let md = parts.next().ok_or_else(|| Error::parse(hno, header.len() + 1, "missing maxdim"))?;
    let max_dim: usize = md
        .strip_prefix("maxdim=")
        .and_then(|v| v.parse().ok())
        .filter(|&d| d < crate::simplex::MAX_DIM)
        .ok_or_else(|| Error::parse(hno, column_of(header, md), "bad maxdim"))?;
    if let Some(extra) = parts.next() {
        return Err(Error::parse(hno, column_of(header, extra), "unexpected token"));
    }
    let mut b = SimplicialSetBuilder::new(max_dim);
    let mut current: Option<usize> = None;
    for (i, line) in iter {
        let lno = offset + i + 1;
        let mut body = *line;
        if let Some(rest) = line.trim_start().strip_prefix("dim ") {
            let (num, tail) = rest.split_once(':').ok_or_else(|| Error::parse(lno, 1, "expected `dim <k>:`"))?;
            let k: usize = num
                .trim()
                .parse()
                .map_err(|_| Error::parse(lno, column_of(line, num), "bad dimension"))?;
            if k > max_dim {
                return Err(Error::parse(lno, column_of(line, num), format!("dimension {k} beyond maxdim")));
            }
            if current.is_some_and(|c| k <= c) || (current.is_none() && k != 0) {
                return Err(Error::parse(lno, column_of(line, num), "dimensions must increase from 0"));
            }
            current = Some(k);
            if k == 0 {
                for tok in tail.split_whitespace() {
                    b.add_vertex(tok).map_err(|e| Error::parse(lno, column_of(line, tok), e.to_string()))?;
                }
                continue;
            }
            if tail.trim().is_empty() {
                continue;
            }
            body = tail;
        }
        let k = match current {
            Some(k) if k >= 1 => k,
            Some(_) => return Err(Error::parse(lno, 1, "vertices belong on the `dim 0:` line")),
            None => return Err(Error::parse(lno, 1, "generator before any `dim` line")),
        };
        let mut toks = body.split_whitespace();
        let id = toks.next().ok_or_else(|| Error::parse(lno, 1, "missing generator"))?;
        let colon = toks.next();
        if colon != Some(":") {
            return Err(Error::parse(lno, column_of(line, id) + id.len(), "expected ` : ` after identifier"));
        }
        let mut faces = Vec::with_capacity(k + 1);
        for (j, tok) in toks.enumerate() {
            let col = column_of(line, tok);
            let (label, value) =
                tok.split_once('=').ok_or_else(|| Error::parse(lno, col, "expected `d<j>=<ref>`"))?;
            if label != format!("d{j}") {
                return Err(Error::parse(lno, col, format!("expected face label d{j}")));
            }
            let r = resolve_ref(value, |name| b.gen_by_name(name))
                .map_err(|m| Error::parse(lno, col + label.len() + 1, m))?;
            if r.dim() + 1 != k || r.gen.dim() >= k {
                return Err(Error::parse(lno, col, format!("face d{j} must have dimension {}", k - 1)));
            }
            faces.push(r);
        }
        if faces.len() != k + 1 {
            return Err(Error::parse(lno, line.len() + 1, format!("expected {} faces", k + 1)));
        }
        b.add(id, faces).map_err(|e| Error::parse(lno, column_of(line, id), e.to_string()))?;
    }
    let set = b.build_unvalidated();
    if let Some(v) = set.validate().first() {
        let name = &v.generator;
        let lno = lines
            .iter()
            .position(|l| l.split_whitespace().next() == Some(name.as_str()))
            .map_or(offset + 1, |p| offset + p + 1);
        return Err(Error::parse(lno, 1, v.to_string()));
    }
    Ok(set)
}

/// Serializes in canonical `BSSET v1` form.
pub fn write_bsset(b: &BiSimplicialSet) -> String {
    let mut out = format!("BSSET v1 hmax={} vmax={}\n", b.hmax(), b.vmax());
    out.push_str("bidim 0 0:");
    for g in b.gens(0, 0) {
        out.push(' ');
        out.push_str(b.name(g));
    }
    out.push('\n');
    for p in 0..=b.hmax() {
        for q in 0..=b.vmax() {
            if p == 0 && q == 0 {
                continue;
            }
            out.push_str(&format!("bidim {p} {q}:\n"));
            for g in b.gens(p, q) {
                out.push_str(b.name(g));
                out.push_str(" :");
                for (j, &f) in b.hfaces(g).iter().enumerate() {
                    out.push_str(&format!(" h{j}={}", b.ref_to_string(f)));
                }
                for (j, &f) in b.vfaces(g).iter().enumerate() {
                    out.push_str(&format!(" v{j}={}", b.ref_to_string(f)));
                }
                out.push('\n');
            }
        }
    }
    out
}

fn degeneracy_word(text: &str, letter: u8) -> std::result::Result<(u32, usize, &str), String> {
    let bytes = text.as_bytes();
    let (mut pos, mut mask, mut len, mut prev) = (0, 0u32, 0, usize::MAX);
    while pos + 1 < bytes.len() && bytes[pos] == letter && bytes[pos + 1].is_ascii_digit() {
        let start = pos + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let j: usize = text[start..end].parse().map_err(|_| format!("bad index in `{text}`"))?;
        if j >= 31 {
            return Err(format!("degeneracy index {j} too large"));
        }
        if j >= prev {
            return Err(format!("degeneracy word in `{text}` is not strictly decreasing"));
        }
        prev = j;
        mask |= 1 << j;
        len += 1;
        pos = end;
    }
    Ok((mask, len, &text[pos..]))
}

fn resolve_bi_ref(text: &str, lookup: impl Fn(&str) -> Option<BiGen>) -> std::result::Result<BiRef, String> {
    let (hmask, hlen, rest) = degeneracy_word(text, b's')?;
    let (vmask, vlen, id) = degeneracy_word(rest, b't')?;
    if id.is_empty() {
        return Err(format!("missing generator in `{text}`"));
    }
    let gen = lookup(id).ok_or_else(|| format!("unknown generator `{id}`"))?;
    if hmask >> (gen.p as usize + hlen) != 0 || vmask >> (gen.q as usize + vlen) != 0 {
        return Err(format!("degeneracy index out of range in `{text}`"));
    }
    Ok(BiRef { gen, hmask, vmask })
}

/// Parses `BSSET v1`, reporting the first offending line and column.
pub fn parse_bsset(text: &str) -> Result<BiSimplicialSet> {
    let lines: Vec<&str> = text.lines().collect();
    let mut iter = lines.iter().enumerate().filter(|(_, l)| significant(l));
    let (hline, header) = iter.next().ok_or_else(|| Error::parse(1, 1, "missing header"))?;
    let hno = hline + 1;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("BSSET") || parts.next() != Some("v1") {
        return Err(Error::parse(hno, 1, "expected `BSSET v1 hmax=<p> vmax=<q>`"));
    }
    let mut bound = |key: &str| -> Result<usize> {
        let tok = parts.next().ok_or_else(|| Error::parse(hno, header.len() + 1, format!("missing {key}")))?;
        tok.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .filter(|&d: &usize| d < 31)
            .ok_or_else(|| Error::parse(hno, column_of(header, tok), format!("bad {key}")))
    };
    let hmax = bound("hmax")?;
    let vmax = bound("vmax")?;
    if let Some(extra) = parts.next() {
        return Err(Error::parse(hno, column_of(header, extra), "unexpected token"));
    }
    let mut b = BiSimplicialSetBuilder::new(hmax, vmax);
    let mut current: Option<(usize, usize)> = None;
    for (i, line) in iter {
        let lno = i + 1;
        let mut body = *line;
        if let Some(rest) = line.trim_start().strip_prefix("bidim ") {
            let (nums, tail) = rest.split_once(':').ok_or_else(|| Error::parse(lno, 1, "expected `bidim <p> <q>:`"))?;
            let mut ns = nums.split_whitespace();
            let mut next = || -> Result<usize> {
                let tok = ns.next().ok_or_else(|| Error::parse(lno, 1, "expected `bidim <p> <q>:`"))?;
                tok.parse().map_err(|_| Error::parse(lno, column_of(line, tok), "bad bidegree"))
            };
            let (p, q) = (next()?, next()?);
            if ns.next().is_some() {
                return Err(Error::parse(lno, 1, "expected `bidim <p> <q>:`"));
            }
            if p > hmax || q > vmax {
                return Err(Error::parse(lno, 1, format!("bidegree ({p},{q}) beyond hmax/vmax")));
            }
            if current.is_some_and(|c| (p, q) <= c) || (current.is_none() && (p, q) != (0, 0)) {
                return Err(Error::parse(lno, 1, "bidegrees must increase lexicographically from (0,0)"));
            }
            current = Some((p, q));
            if (p, q) == (0, 0) {
                for tok in tail.split_whitespace() {
                    b.add(tok, 0, 0, vec![], vec![]).map_err(|e| Error::parse(lno, column_of(line, tok), e.to_string()))?;
                }
                continue;
            }
            if tail.trim().is_empty() {
                continue;
            }
            body = tail;
        }
        let (p, q) = match current {
            Some((0, 0)) => return Err(Error::parse(lno, 1, "vertices belong on the `bidim 0 0:` line")),
            Some(c) => c,
            None => return Err(Error::parse(lno, 1, "generator before any `bidim` line")),
        };
        let mut toks = body.split_whitespace();
        let id = toks.next().ok_or_else(|| Error::parse(lno, 1, "missing generator"))?;
        if toks.next() != Some(":") {
            return Err(Error::parse(lno, column_of(line, id) + id.len(), "expected ` : ` after identifier"));
        }
        let labels: Vec<(char, usize)> = (0..if p == 0 { 0 } else { p + 1 })
            .map(|j| ('h', j))
            .chain((0..if q == 0 { 0 } else { q + 1 }).map(|j| ('v', j)))
            .collect();
        let (mut hf, mut vf) = (Vec::new(), Vec::new());
        let mut count = 0;
        for (tok, &(letter, j)) in toks.by_ref().zip(&labels) {
            count += 1;
            let col = column_of(line, tok);
            let (label, value) = tok.split_once('=').ok_or_else(|| Error::parse(lno, col, "expected `h<j>=<ref>` or `v<j>=<ref>`"))?;
            if label != format!("{letter}{j}") {
                return Err(Error::parse(lno, col, format!("expected face label {letter}{j}")));
            }
            let r = resolve_bi_ref(value, |name| b.gen_by_name(name)).map_err(|m| Error::parse(lno, col + label.len() + 1, m))?;
            let (eh, ev) = if letter == 'h' { (p - 1, q) } else { (p, q - 1) };
            if r.hdim() != eh || r.vdim() != ev {
                return Err(Error::parse(lno, col, format!("face {label} must have bidegree ({eh},{ev})")));
            }
            if letter == 'h' { hf.push(r) } else { vf.push(r) }
        }
        if count != labels.len() || toks.next().is_some() {
            return Err(Error::parse(lno, line.len() + 1, format!("expected {} faces", labels.len())));
        }
        b.add(id, p, q, hf, vf).map_err(|e| Error::parse(lno, column_of(line, id), e.to_string()))?;
    }
    let set = b.build_unvalidated();
    if let Some(v) = set.validate().first() {
        let name = v.split('`').nth(1).unwrap_or("");
        let lno = lines.iter().position(|l| l.split_whitespace().next() == Some(name)).map_or(1, |p| p + 1);
        return Err(Error::parse(lno, 1, v.clone()));
    }
    Ok(set)
}

/// A named collection of simplicial sets, maps and metadata.
#[derive(Clone, Debug, Default)]
pub struct Container {
    pub kind: String,
    pub sets: Vec<(String, Arc<SimplicialSet>)>,
    pub maps: Vec<(String, String, String, SimplicialMap)>,
    pub meta: Vec<(String, String)>,
}

impl Container {
    pub fn new(kind: &str) -> Self {
        Container { kind: kind.to_string(), ..Default::default() }
    }

    pub fn add_set(&mut self, name: &str, set: Arc<SimplicialSet>) {
        self.sets.push((name.to_string(), set));
    }

    /// Adds a map whose domain and codomain are sets already in the container.
    pub fn add_map(&mut self, name: &str, domain: &str, codomain: &str, map: SimplicialMap) {
        self.maps.push((name.to_string(), domain.to_string(), codomain.to_string(), map));
    }

    pub fn add_meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn set(&self, name: &str) -> Option<&Arc<SimplicialSet>> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn map(&self, name: &str) -> Option<&SimplicialMap> {
        self.maps.iter().find(|(n, ..)| n == name).map(|(.., m)| m)
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} v1\n", self.kind);
        for (name, set) in &self.sets {
            out.push_str(&format!("set {name}\n"));
            out.push_str(&write_sset(set));
            out.push_str("end\n");
        }
        for (name, dom, cod, map) in &self.maps {
            out.push_str(&format!("map {name} {dom} {cod}\n"));
            let d = map.domain();
            let c = map.codomain();
            for k in 0..=map.defined_dim() {
                for g in d.gens(k) {
                    out.push_str(&format!("{} = {}\n", d.name(g), c.ref_to_string(map.image(g))));
                }
            }
            out.push_str("end\n");
        }
        for (k, v) in &self.meta {
            out.push_str(&format!("meta {k} {v}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let mut i = 0;
        while i < lines.len() && !significant(lines[i]) {
            i += 1;
        }
        let header = lines.get(i).ok_or_else(|| Error::parse(1, 1, "missing header"))?;
        let mut hp = header.split_whitespace();
        let kind = hp.next().unwrap_or_default().to_string();
        if hp.next() != Some("v1") || kind.is_empty() || kind == "SSET" || kind == "BSSET" {
            return Err(Error::parse(i + 1, 1, "expected `<KIND> v1`"));
        }
        let mut c = Container::new(&kind);
        let mut by_name: BTreeMap<String, Arc<SimplicialSet>> = BTreeMap::new();
        i += 1;
        while i < lines.len() {
            let line = lines[i];
            if !significant(line) {
                i += 1;
                continue;
            }
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("set") => {
                    let name = toks.next().ok_or_else(|| Error::parse(i + 1, 1, "missing set name"))?;
                    let end = find_end(&lines, i + 1)?;
                    let set = Arc::new(parse_sset_lines(&lines[i + 1..end], i + 1)?);
                    by_name.insert(name.to_string(), set.clone());
                    c.add_set(name, set);
                    i = end + 1;
                }
                Some("map") => {
                    let lno = i + 1;
                    let fields: Vec<&str> = toks.collect();
                    if fields.len() != 3 {
                        return Err(Error::parse(lno, 1, "expected `map <name> <domain> <codomain>`"));
                    }
                    let dom = by_name
                        .get(fields[1])
                        .ok_or_else(|| Error::parse(lno, column_of(line, fields[1]), "unknown set"))?
                        .clone();
                    let cod = by_name
                        .get(fields[2])
                        .ok_or_else(|| Error::parse(lno, column_of(line, fields[2]), "unknown set"))?
                        .clone();
                    let end = find_end(&lines, i + 1)?;
                    let map = parse_map_body(&lines[i + 1..end], i + 1, dom, cod)?;
                    c.add_map(fields[0], fields[1], fields[2], map);
                    i = end + 1;
                }
                Some("meta") => {
                    let rest = line.trim_start()["meta".len()..].trim_start();
                    let (k, v) = rest.split_once(' ').unwrap_or((rest, ""));
                    if k.is_empty() {
                        return Err(Error::parse(i + 1, 1, "missing meta key"));
                    }
                    c.add_meta(k, v);
                    i += 1;
                }
                _ => return Err(Error::parse(i + 1, 1, "expected `set`, `map` or `meta`")),
            }
        }
        Ok(c)
    }
}

fn find_end(lines: &[&str], from: usize) -> Result<usize> {
    (from..lines.len())
        .find(|&j| lines[j].trim() == "end")
        .ok_or_else(|| Error::parse(from, 1, "missing `end`"))
}

fn parse_map_body(
    lines: &[&str],
    offset: usize,
    dom: Arc<SimplicialSet>,
    cod: Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let top = dom.max_dim().min(cod.max_dim());
    let mut images: Vec<Vec<Option<SimplexRef>>> = (0..=top).map(|k| vec![None; dom.count(k)]).collect();
    for (i, line) in lines.iter().enumerate() {
        if !significant(line) {
            continue;
        }
        let lno = offset + i + 1;
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::parse(lno, 1, "expected `<id> = <ref>`"))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let g = dom.gen_by_name(lhs).ok_or_else(|| Error::parse(lno, column_of(line, lhs), "unknown domain generator"))?;
        if g.dim() > top {
            return Err(Error::parse(lno, column_of(line, lhs), "generator beyond the map's truncation"));
        }
        let y = cod.parse_ref(rhs).map_err(|m| Error::parse(lno, column_of(line, rhs), m))?;
        if y.dim() != g.dim() {
            return Err(Error::parse(lno, column_of(line, rhs), "image has the wrong dimension"));
        }
        images[g.dim()][g.index()] = Some(y);
    }
    let mut full = Vec::with_capacity(images.len());
    for (k, level) in images.into_iter().enumerate() {
        let mut out = Vec::with_capacity(level.len());
        for (idx, y) in level.into_iter().enumerate() {
            out.push(y.ok_or_else(|| {
                Error::parse(offset, 1, format!("no image for `{}`", dom.name(Gen::new(k, idx))))
            })?);
        }
        full.push(out);
    }
    SimplicialMap::new(dom, cod, full).map_err(|e| Error::parse(offset, 1, e.to_string()))
}

/// Any file in one of the formats above, recognised by its header.
#[derive(Clone, Debug)]
pub enum Document {
    Set(SimplicialSet),
    BiSet(BiSimplicialSet),
    Container(Container),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let head = text.lines().find(|l| significant(l)).and_then(|l| l.split_whitespace().next());
        match head {
            Some("SSET") => Ok(Document::Set(parse_sset(text)?)),
            Some("BSSET") => Ok(Document::BiSet(parse_bsset(text)?)),
            Some(_) => Ok(Document::Container(Container::parse(text)?)),
            None => Err(Error::parse(1, 1, "empty file")),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Document::Set(s) => write_sset(s),
            Document::BiSet(b) => write_bsset(b),
            Document::Container(c) => c.to_text(),
        }
    }

    pub fn kind(&self) -> &str {
        match self {
            Document::Set(_) => "SSET",
            Document::BiSet(_) => "BSSET",
            Document::Container(c) => &c.kind,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn delta1_text() {
        let d1 = builders::standard(1, 1).unwrap();
        assert_eq!(write_sset(&d1), "SSET v1 maxdim=1\ndim 0: v0 v1\ndim 1:\ne01 : d0=v1 d1=v0\n");
        let inline = parse_sset("SSET v1 maxdim=1\ndim 0: v0 v1\ndim 1: e : d0=v1 d1=v0\n").unwrap();
        assert_eq!(inline.counts(), vec![2, 1]);
    }

    #[test]
    fn bsset_round_trip() {
        use crate::bisimp::{d_shriek, delta_embed};
        use std::sync::Arc;
        let d = d_shriek(&Arc::new(builders::standard(2, 3).unwrap())).unwrap();
        for b in [d.object.as_ref().clone(), delta_embed(&builders::boundary(2, 2).unwrap())] {
            let t = write_bsset(&b);
            let back = parse_bsset(&t).unwrap();
            assert_eq!(back, b);
            assert_eq!(write_bsset(&back), t);
        }
        let text = "BSSET v1 hmax=1 vmax=1\nbidim 0 0: a b\nbidim 0 1:\nu : v0=b v1=a\nbidim 1 0:\ne : h0=b h1=a\nbidim 1 1:\n";
        assert_eq!(write_bsset(&parse_bsset(text).unwrap()), text);
        let Err(Error::Parse { line, .. }) = parse_bsset("BSSET v1 hmax=2 vmax=0\nbidim 0 0: a\nbidim 1 0:\ne : h0=a h1=a\nbidim 2 0:\nf : h0=s0s1a h1=s0a h2=s0a\n") else {
            panic!()
        };
        assert_eq!(line, 6);
        assert!(parse_bsset("BSSET v1 hmax=1 vmax=0\nbidim 1 0:\nbidim 0 0: a\n").is_err());
        assert!(parse_bsset("BSSET v1 hmax=1 vmax=1\nbidim 0 0: a b\nbidim 1 0:\ne : h0=b v0=a\n").is_err());
    }

    #[test]
    fn round_trip() {
        for s in [builders::standard(3, 4).unwrap(), builders::quotient_d(3).unwrap()] {
            let t = write_sset(&s);
            let back = parse_sset(&t).unwrap();
            assert_eq!(back, s);
            assert_eq!(write_sset(&back), t);
        }
    }

    #[test]
    fn rejects_non_decreasing_word() {
        let t = "SSET v1 maxdim=2\ndim 0: v0\ndim 1:\ndim 2:\nx : d0=s0s1v0 d1=s0v0 d2=s0v0\n";
        match parse_sset(t) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 5);
                assert_eq!(column, 8);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_identity_violation() {
        let t = "SSET v1 maxdim=2\ndim 0: a b\ndim 1:\nx : d0=b d1=a\ny : d0=a d1=b\ndim 2:\nt : d0=x d1=x d2=x\n";
        assert!(matches!(parse_sset(t), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn container_round_trip() {
        let d0 = Arc::new(builders::standard(0, 1).unwrap());
        let d1 = Arc::new(builders::standard(1, 1).unwrap());
        let f = SimplicialMap::from_vertex_map(d0.clone(), d1.clone(), &[1]).unwrap();
        let mut c = Container::new("MAP");
        c.add_set("domain", d0);
        c.add_set("codomain", d1);
        c.add_map("f", "domain", "codomain", f.clone());
        c.add_meta("note", "vertex one");
        let t = c.to_text();
        let back = Container::parse(&t).unwrap();
        assert_eq!(back.to_text(), t);
        assert_eq!(back.map("f").unwrap(), &f);
        assert_eq!(back.meta("note"), Some("vertex one"));
    }
}
