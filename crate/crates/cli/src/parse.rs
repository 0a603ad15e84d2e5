//! Line-oriented workspace format: `space`/`points`/`order` blocks,
//! `map`/`send` blocks, `config` stanzas naming the five retraction
//! pieces, and one-line `algebra` declarations. Every parse failure
//! carries a line and column.

use std::collections::BTreeMap;
use std::fmt;

use idealtop_core::cofinite::CofiniteMap;
use idealtop_core::cstar::BlockAlgebra;
use idealtop_core::poset::{FinitePoset, SpaceMap};
use idealtop_core::retraction::RetractionConfig;
use idealtop_core::subset::Subset;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// A declared finite space plus the declaration order of its points,
/// which drives all display output.
#[derive(Debug, Clone)]
pub struct SpaceEntry {
    pub poset: FinitePoset,
    pub display: Vec<String>,
}

impl SpaceEntry {
    pub fn derived(poset: FinitePoset) -> SpaceEntry {
        let display = poset.names().to_vec();
        SpaceEntry { poset, display }
    }

    /// Renders a subset with members in declaration order.
    pub fn set_name(&self, s: &Subset) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for name in &self.display {
            let i = self.poset.index_of(name).expect("display name");
            if s.contains(i) {
                if !first {
                    out.push(',');
                }
                out.push_str(name);
                first = false;
            }
        }
        out.push('}');
        out
    }
}

#[derive(Debug, Clone)]
pub enum MapEntry {
    Finite {
        src: String,
        dst: String,
        map: SpaceMap,
    },
    Cofinite {
        dst: String,
        map: CofiniteMap,
    },
}

#[derive(Default)]
pub struct Workspace {
    pub spaces: BTreeMap<String, SpaceEntry>,
    pub maps: BTreeMap<String, MapEntry>,
    pub configs: BTreeMap<String, RetractionConfig>,
    pub algebras: BTreeMap<String, BlockAlgebra>,
}

/// A space expression in map and config positions: a declared name, a
/// binary product `A*B`, or the builtin `cofinite`.
pub enum SpaceRef {
    Finite(SpaceEntry),
    Cofinite,
}

impl Workspace {
    pub fn resolve_space(
        &self,
        expr: &str,
        line: usize,
        col: usize,
    ) -> Result<SpaceRef, ParseError> {
        if expr == "cofinite" {
            return Ok(SpaceRef::Cofinite);
        }
        if let Some((a, b)) = expr.split_once('*') {
            let ea = self.finite_space(a, line, col)?;
            let eb = self.finite_space(b, line, col)?;
            let poset = ea.poset.product(&eb.poset);
            return Ok(SpaceRef::Finite(SpaceEntry::derived(poset)));
        }
        Ok(SpaceRef::Finite(self.finite_space(expr, line, col)?.clone()))
    }

    fn finite_space(&self, name: &str, line: usize, col: usize) -> Result<&SpaceEntry, ParseError> {
        self.spaces
            .get(name)
            .ok_or_else(|| ParseError::new(line, col, format!("unknown space `{name}`")))
    }

    /// Parses one file's contents into the workspace. Blocks within a
    /// file may reference each other in any order: spaces and algebras
    /// are resolved first, then maps, then configs.
    pub fn parse(&mut self, text: &str) -> Result<(), ParseError> {
        let mut blocks: Vec<Block> = Vec::new();
        let mut block: Option<Block> = None;
        for (lineno0, raw) in text.lines().enumerate() {
            let lineno = lineno0 + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokens(line);
            if toks.is_empty() {
                continue;
            }
            let (col0, head) = toks[0];
            match head {
                "space" | "map" | "config" | "algebra" => {
                    if let Some(b) = block.take() {
                        blocks.push(b);
                    }
                    block = Some(self.open_block(head, &toks, lineno)?);
                }
                _ => match block.as_mut() {
                    Some(b) => b.feed(&toks, lineno)?,
                    None => {
                        return Err(ParseError::new(
                            lineno,
                            col0,
                            format!("`{head}` outside of a block"),
                        ))
                    }
                },
            }
        }
        if let Some(b) = block.take() {
            blocks.push(b);
        }
        for rank in 0..3 {
            let (now, later): (Vec<Block>, Vec<Block>) =
                blocks.into_iter().partition(|b| b.rank() == rank);
            for b in now {
                self.finish(b)?;
            }
            blocks = later;
        }
        Ok(())
    }

    fn open_block(
        &self,
        head: &str,
        toks: &[(usize, &str)],
        lineno: usize,
    ) -> Result<Block, ParseError> {
        let name = match toks.get(1) {
            Some(&(_, n)) => n.to_owned(),
            None => {
                return Err(ParseError::new(
                    lineno,
                    toks[0].0,
                    format!("`{head}` needs a name"),
                ))
            }
        };
        match head {
            "space" => {
                if name == "cofinite" {
                    return Err(ParseError::new(
                        lineno,
                        toks[1].0,
                        "`cofinite` is a builtin space name",
                    ));
                }
                expect_len(toks, 2, lineno)?;
                Ok(Block::Space {
                    name,
                    line: lineno,
                    points: Vec::new(),
                    relations: Vec::new(),
                })
            }
            "map" => {
                // map NAME : SRC -> DST
                let parts: Vec<&str> = toks.iter().skip(2).map(|&(_, t)| t).collect();
                if parts.len() != 4 || parts[0] != ":" || parts[2] != "->" {
                    return Err(ParseError::new(
                        lineno,
                        toks[0].0,
                        "expected `map NAME : SRC -> DST`",
                    ));
                }
                Ok(Block::Map {
                    name,
                    line: lineno,
                    src: parts[1].to_owned(),
                    dst: parts[3].to_owned(),
                    sends: Vec::new(),
                })
            }
            "config" => {
                expect_len(toks, 2, lineno)?;
                Ok(Block::Config {
                    name,
                    line: lineno,
                    fields: BTreeMap::new(),
                })
            }
            "algebra" => {
                // algebra NAME blocks 2 3
                if toks.len() < 4 || toks[2].1 != "blocks" {
                    return Err(ParseError::new(
                        lineno,
                        toks[0].0,
                        "expected `algebra NAME blocks SIZE...`",
                    ));
                }
                let mut sizes = Vec::new();
                for &(col, t) in &toks[3..] {
                    let s: u32 = t.parse().map_err(|_| {
                        ParseError::new(lineno, col, format!("bad block size `{t}`"))
                    })?;
                    if s == 0 {
                        return Err(ParseError::new(lineno, col, "block size must be >= 1"));
                    }
                    sizes.push(s);
                }
                Ok(Block::Algebra {
                    name,
                    line: lineno,
                    sizes,
                })
            }
            _ => unreachable!(),
        }
    }

    fn finish(&mut self, block: Block) -> Result<(), ParseError> {
        match block {
            Block::Space {
                name,
                line,
                points,
                relations,
            } => {
                if self.spaces.contains_key(&name) {
                    return Err(ParseError::new(line, 7, format!("duplicate space `{name}`")));
                }
                let poset = FinitePoset::new(&points, &relations)
                    .map_err(|e| ParseError::new(line, 1, e.to_string()))?;
                self.spaces.insert(
                    name,
                    SpaceEntry {
                        poset,
                        display: points,
                    },
                );
            }
            Block::Map {
                name,
                line,
                src,
                dst,
                sends,
            } => {
                if self.maps.contains_key(&name) {
                    return Err(ParseError::new(line, 5, format!("duplicate map `{name}`")));
                }
                let entry = self.build_map(&src, &dst, &sends, line)?;
                self.maps.insert(name, entry);
            }
            Block::Config { name, line, fields } => {
                if self.configs.contains_key(&name) {
                    return Err(ParseError::new(line, 8, format!("duplicate config `{name}`")));
                }
                let config = self.build_config(&fields, line)?;
                self.configs.insert(name, config);
            }
            Block::Algebra { name, line, sizes } => {
                if self.algebras.contains_key(&name) {
                    return Err(ParseError::new(line, 9, format!("duplicate algebra `{name}`")));
                }
                let a = BlockAlgebra::from_sizes("b", &sizes)
                    .map_err(|e| ParseError::new(line, 1, e.to_string()))?;
                self.algebras.insert(name, a);
            }
        }
        Ok(())
    }

    fn build_map(
        &self,
        src: &str,
        dst: &str,
        sends: &[(usize, usize, String, String)],
        line: usize,
    ) -> Result<MapEntry, ParseError> {
        let dst_entry = match self.resolve_space(dst, line, 1)? {
            SpaceRef::Finite(e) => e,
            SpaceRef::Cofinite => {
                return Err(ParseError::new(
                    line,
                    1,
                    "maps into the cofinite space are not supported",
                ))
            }
        };
        match self.resolve_space(src, line, 1)? {
            SpaceRef::Finite(src_entry) => {
                let n = src_entry.poset.len();
                let mut assignment: Vec<Option<usize>> = vec![None; n];
                for (lineno, col, from, to) in sends {
                    let i = src_entry.poset.index_of(from).ok_or_else(|| {
                        ParseError::new(*lineno, *col, format!("unknown point `{from}` in `{src}`"))
                    })?;
                    let j = dst_entry.poset.index_of(to).ok_or_else(|| {
                        ParseError::new(*lineno, *col, format!("unknown point `{to}` in `{dst}`"))
                    })?;
                    if assignment[i].is_some() {
                        return Err(ParseError::new(
                            *lineno,
                            *col,
                            format!("point `{from}` sent twice"),
                        ));
                    }
                    assignment[i] = Some(j);
                }
                let mut total = Vec::with_capacity(n);
                for (i, v) in assignment.into_iter().enumerate() {
                    match v {
                        Some(j) => total.push(j),
                        None => {
                            return Err(ParseError::new(
                                line,
                                1,
                                format!("point `{}` has no image", src_entry.poset.name(i)),
                            ))
                        }
                    }
                }
                let map =
                    SpaceMap::from_assignment(src_entry.poset.clone(), dst_entry.poset, total);
                Ok(MapEntry::Finite {
                    src: src.to_owned(),
                    dst: dst.to_owned(),
                    map,
                })
            }
            SpaceRef::Cofinite => {
                let mut default: Option<usize> = None;
                let mut exceptions = BTreeMap::new();
                for (lineno, col, from, to) in sends {
                    let j = dst_entry.poset.index_of(to).ok_or_else(|| {
                        ParseError::new(*lineno, *col, format!("unknown point `{to}` in `{dst}`"))
                    })?;
                    if from == "default" {
                        if default.is_some() {
                            return Err(ParseError::new(*lineno, *col, "default sent twice"));
                        }
                        default = Some(j);
                    } else {
                        let p: u64 = from.parse().map_err(|_| {
                            ParseError::new(
                                *lineno,
                                *col,
                                format!("cofinite points are naturals, got `{from}`"),
                            )
                        })?;
                        exceptions.insert(p, j);
                    }
                }
                let default = default.ok_or_else(|| {
                    ParseError::new(line, 1, "cofinite map needs a `default->VALUE` send")
                })?;
                Ok(MapEntry::Cofinite {
                    dst: dst.to_owned(),
                    map: CofiniteMap::new(dst_entry.poset, default, exceptions),
                })
            }
        }
    }

    fn build_config(
        &self,
        fields: &BTreeMap<String, (usize, usize, String)>,
        line: usize,
    ) -> Result<RetractionConfig, ParseError> {
        let get = |key: &str| -> Result<&(usize, usize, String), ParseError> {
            fields
                .get(key)
                .ok_or_else(|| ParseError::new(line, 1, format!("config is missing `{key}`")))
        };
        let space = |key: &str| -> Result<FinitePoset, ParseError> {
            let (l, c, v) = get(key)?;
            match self.resolve_space(v, *l, *c)? {
                SpaceRef::Finite(e) => Ok(e.poset),
                SpaceRef::Cofinite => Err(ParseError::new(
                    *l,
                    *c,
                    "retraction configs need finite spaces",
                )),
            }
        };
        let map = |key: &str| -> Result<SpaceMap, ParseError> {
            let (l, c, v) = get(key)?;
            match self.maps.get(v) {
                Some(MapEntry::Finite { map, .. }) => Ok(map.clone()),
                Some(MapEntry::Cofinite { .. }) => {
                    Err(ParseError::new(*l, *c, format!("`{v}` is a cofinite map")))
                }
                None => Err(ParseError::new(*l, *c, format!("unknown map `{v}`"))),
            }
        };
        RetractionConfig::new(space("x1")?, space("x2")?, space("y")?, map("phi")?, map("psi")?)
            .map_err(|e| ParseError::new(line, 1, e.to_string()))
    }
}

enum Block {
    Space {
        name: String,
        line: usize,
        points: Vec<String>,
        relations: Vec<(String, String)>,
    },
    Map {
        name: String,
        line: usize,
        src: String,
        dst: String,
        /// (line, col, from, to) per send item
        sends: Vec<(usize, usize, String, String)>,
    },
    Config {
        name: String,
        line: usize,
        /// key -> (line, col, value)
        fields: BTreeMap<String, (usize, usize, String)>,
    },
    Algebra {
        name: String,
        line: usize,
        sizes: Vec<u32>,
    },
}

impl Block {
    /// Resolution order: spaces and algebras, then maps, then configs.
    fn rank(&self) -> usize {
        match self {
            Block::Space { .. } | Block::Algebra { .. } => 0,
            Block::Map { .. } => 1,
            Block::Config { .. } => 2,
        }
    }

    fn feed(&mut self, toks: &[(usize, &str)], lineno: usize) -> Result<(), ParseError> {
        let (col0, head) = toks[0];
        match self {
            Block::Space {
                points, relations, ..
            } => match head {
                "points" => {
                    for &(_, t) in &toks[1..] {
                        points.push(t.to_owned());
                    }
                    Ok(())
                }
                "order" => {
                    for &(col, t) in &toks[1..] {
                        let (a, b) = t.split_once('<').ok_or_else(|| {
                            ParseError::new(lineno, col, format!("expected `a<b`, got `{t}`"))
                        })?;
                        relations.push((a.to_owned(), b.to_owned()));
                    }
                    Ok(())
                }
                _ => Err(ParseError::new(
                    lineno,
                    col0,
                    format!("unexpected `{head}` in a space block"),
                )),
            },
            Block::Map { sends, .. } => match head {
                "send" => {
                    for &(col, t) in &toks[1..] {
                        let (a, b) = t.split_once("->").ok_or_else(|| {
                            ParseError::new(lineno, col, format!("expected `a->b`, got `{t}`"))
                        })?;
                        sends.push((lineno, col, a.to_owned(), b.to_owned()));
                    }
                    Ok(())
                }
                _ => Err(ParseError::new(
                    lineno,
                    col0,
                    format!("unexpected `{head}` in a map block"),
                )),
            },
            Block::Config { fields, .. } => match head {
                "x1" | "x2" | "y" | "phi" | "psi" => {
                    let (col, v) = *toks.get(1).ok_or_else(|| {
                        ParseError::new(lineno, col0, format!("`{head}` needs a value"))
                    })?;
                    if fields
                        .insert(head.to_owned(), (lineno, col, v.to_owned()))
                        .is_some()
                    {
                        return Err(ParseError::new(lineno, col0, format!("duplicate `{head}`")));
                    }
                    Ok(())
                }
                _ => Err(ParseError::new(
                    lineno,
                    col0,
                    format!("unexpected `{head}` in a config block"),
                )),
            },
            Block::Algebra { .. } => Err(ParseError::new(
                lineno,
                col0,
                format!("unexpected `{head}` after an algebra declaration"),
            )),
        }
    }
}

fn expect_len(toks: &[(usize, &str)], len: usize, lineno: usize) -> Result<(), ParseError> {
    if toks.len() > len {
        let (col, t) = toks[len];
        return Err(ParseError::new(lineno, col, format!("unexpected `{t}`")));
    }
    Ok(())
}

/// Whitespace tokenizer that remembers 1-based column offsets.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses a `{a,b,c}` set literal into point names.
pub fn parse_set_literal(lit: &str) -> Result<Vec<String>, String> {
    let inner = lit
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| format!("expected a `{{a,b}}` set literal, got `{lit}`"))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    // split on commas outside parentheses, so tuple point names like
    // `(a,b)` survive
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(inner[start..i].trim().to_owned());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(inner[start..].trim().to_owned());
    Ok(out)
}

/// Canonical re-emission of a space block: declaration-order points and
/// the cover relations of the order.
pub fn emit_space(name: &str, entry: &SpaceEntry) -> String {
    let mut out = format!("space {name}\npoints");
    for p in &entry.display {
        out.push(' ');
        out.push_str(p);
    }
    out.push('\n');
    let covers = entry.poset.covers();
    if !covers.is_empty() {
        out.push_str("order");
        for (i, j) in covers {
            out.push_str(&format!(" {}<{}", entry.poset.name(i), entry.poset.name(j)));
        }
        out.push('\n');
    }
    out
}

pub fn emit_map(name: &str, entry: &MapEntry) -> String {
    match entry {
        MapEntry::Finite { src, dst, map } => {
            let mut out = format!("map {name} : {src} -> {dst}\nsend");
            for i in 0..map.source().len() {
                out.push_str(&format!(
                    " {}->{}",
                    map.source().name(i),
                    map.target().name(map.apply(i))
                ));
            }
            out.push('\n');
            out
        }
        MapEntry::Cofinite { dst, map } => {
            let mut out = format!("map {name} : cofinite -> {dst}\nsend");
            out.push_str(&format!(" default->{}", map.target().name(map.default_value())));
            for (p, v) in map.exceptions() {
                out.push_str(&format!(" {p}->{}", map.target().name(*v)));
            }
            out.push('\n');
            out
        }
    }
}

pub fn emit_algebra(name: &str, a: &BlockAlgebra) -> String {
    let sizes: Vec<String> = a.blocks().iter().map(|(_, s)| s.to_string()).collect();
    format!("algebra {name} blocks {}\n", sizes.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spaces_maps_and_algebras() {
        let mut ws = Workspace::default();
        ws.parse(
            "space V3\npoints p m z\norder p<m p<z\n\n\
             space D2\npoints a b\n\n\
             map f : V3 -> D2  # a comment\nsend p->a m->a z->a\n\n\
             algebra A blocks 2 3\n",
        )
        .unwrap();
        assert_eq!(ws.spaces["V3"].poset.len(), 3);
        assert_eq!(ws.spaces["V3"].display, vec!["p", "m", "z"]);
        match &ws.maps["f"] {
            MapEntry::Finite { map, .. } => assert!(map.is_continuous()),
            _ => panic!(),
        }
        assert_eq!(ws.algebras["A"].len(), 2);
    }

    #[test]
    fn errors_carry_location() {
        let mut ws = Workspace::default();
        let e = ws
            .parse("space V\npoints p m\norder p<m m<p\n")
            .unwrap_err();
        assert_eq!(e.line, 1); // reported against the block header
        assert!(e.msg.contains("antisymmetry"), "{e}");

        let e = Workspace::default()
            .parse("space V\npoints p\nfrobnicate\n")
            .unwrap_err();
        assert_eq!((e.line, e.col), (3, 1));

        let e = Workspace::default()
            .parse("map f : NOPE -> NOPE\nsend a->b\n")
            .unwrap_err();
        assert!(e.msg.contains("unknown space"));
    }

    #[test]
    fn cofinite_maps_parse() {
        let mut ws = Workspace::default();
        ws.parse("space D2\npoints a b\n\nmap g : cofinite -> D2\nsend default->a 3->b\n")
            .unwrap();
        match &ws.maps["g"] {
            MapEntry::Cofinite { map, .. } => assert!(!map.is_continuous().unwrap()),
            _ => panic!(),
        }
    }

    #[test]
    fn space_round_trips_through_emit() {
        let mut ws = Workspace::default();
        ws.parse("space V3\npoints p m z\norder p<m p<z\n").unwrap();
        let text = emit_space("V3", &ws.spaces["V3"]);
        let mut ws2 = Workspace::default();
        ws2.parse(&text).unwrap();
        assert_eq!(ws2.spaces["V3"].poset, ws.spaces["V3"].poset);
        assert_eq!(emit_space("V3", &ws2.spaces["V3"]), text);
    }
}
