//! Presentations of SFTs (vertex-labelled graphs) and sofic shifts
//! (edge-labelled graphs), higher-block recoding, and their speedups.
//!
//! A speedup presentation recodes the shift into `M`-blocks with
//! `M = 2 max(p_max, N) + 1`, where `N` is the smallest radius on which the
//! jump is constant. The vertex (or, for sofic shifts, edge) label of a step
//! is the `M`-block centred on the landing position, so a path of `n + 1`
//! steps determines an S-pattern of length `n`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::speedup::{spatterns, JumpFunction, SPattern};
use crate::words::{Alphabet, Letter, OrbitSegment, Word};

/// Vertex-labelled transition graph; vertex `i` carries label symbol `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftPresentation {
    labels: Alphabet,
    edges: BTreeSet<(usize, usize)>,
}

/// Edge-labelled transition graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoficPresentation {
    vertices: Vec<String>,
    labels: Alphabet,
    edges: BTreeSet<(usize, usize, Letter)>,
}

/// Either kind of presentation, as read from a presentation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Sft(SftPresentation),
    Sofic(SoficPresentation),
}

fn successors(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for (a, b) in edges {
        out[a].push(b);
    }
    out
}

/// Vertices that lie on a bi-infinite path.
fn essential_vertices(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut alive = vec![true; n];
    loop {
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for &(a, b) in edges {
            if alive[a] && alive[b] {
                has_out[a] = true;
                has_in[b] = true;
            }
        }
        let mut changed = false;
        for v in 0..n {
            if alive[v] && !(has_out[v] && has_in[v]) {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

fn label_text(alphabet: &Alphabet, letters: &[Letter]) -> String {
    if alphabet.is_single_char() {
        alphabet.render(letters)
    } else {
        letters.iter().map(|&l| alphabet.symbol(l)).collect::<Vec<_>>().join(":")
    }
}

impl SftPresentation {
    /// Graph on the given vertex labels; edges are pairs of vertex indices.
    pub fn new(labels: Alphabet, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= labels.len() || b >= labels.len()) {
            return Err(Error::InvalidPresentation(format!("edge {a} -> {b} uses unknown vertex")));
        }
        Ok(SftPresentation { labels, edges })
    }

    /// Full shift on `alphabet`.
    pub fn full(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let edges = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
        Self::new(alphabet, edges).expect("valid vertices")
    }

    /// Golden-mean shift: binary sequences without `11`.
    pub fn golden_mean() -> Self {
        Self::new(Alphabet::binary(), [(0, 0), (0, 1), (1, 0)]).expect("valid vertices")
    }

    pub fn labels(&self) -> &Alphabet {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Drops vertices that are not on any bi-infinite path.
    pub fn prune(&self) -> Result<Self> {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        let alive = essential_vertices(self.vertex_count(), &edges);
        if alive.iter().all(|&a| a) {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| alive[v]).collect();
        if keep.is_empty() {
            return Err(Error::InvalidPresentation("no essential vertex".into()));
        }
        let renumber: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = Alphabet::new(keep.iter().map(|&v| self.labels.symbol(v as Letter).to_string()))?;
        let edges = edges
            .into_iter()
            .filter_map(|(a, b)| Some((*renumber.get(&a)?, *renumber.get(&b)?)));
        Self::new(labels, edges)
    }

    pub fn is_essential(&self) -> bool {
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        essential_vertices(self.vertex_count(), &edges).iter().all(|&a| a)
    }

    /// All vertex paths with `len` vertices.
    fn paths(&self, len: usize) -> Vec<Vec<usize>> {
        let succ = successors(self.vertex_count(), self.edges.iter().copied());
        let mut paths: Vec<Vec<usize>> = (0..self.vertex_count()).map(|v| vec![v]).collect();
        for _ in 1..len {
            paths = paths
                .into_iter()
                .flat_map(|p| {
                    let last = *p.last().expect("non-empty path");
                    succ[last].iter().map(move |&b| {
                        let mut q = p.clone();
                        q.push(b);
                        q
                    })
                })
                .collect();
        }
        paths
    }

    /// Label words of length `n` along paths (the presentation must be essential).
    pub fn language(&self, n: usize) -> BTreeSet<Word> {
        if n == 0 {
            return BTreeSet::new();
        }
        self.paths(n)
            .into_iter()
            .map(|p| {
                let letters = p.into_iter().map(|v| v as Letter).collect();
                Word::new(self.labels.clone(), letters).expect("labels in range")
            })
            .collect()
    }

    /// The same shift as an edge-labelled graph: edge `u -> v` carries the label of `v`.
    pub fn to_sofic(&self) -> SoficPresentation {
        SoficPresentation {
            vertices: self.labels.symbols().to_vec(),
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|&(a, b)| (a, b, b as Letter)).collect(),
        }
    }

    /// Seeded random walk, read off the vertex labels.
    pub fn random_walk(&self, length: usize, seed: u64) -> Result<OrbitSegment> {
        let g = self.prune()?;
        let succ = successors(g.vertex_count(), g.edges.iter().copied());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = rng.random_range(0..g.vertex_count());
        let mut letters = Vec::with_capacity(length);
        for _ in 0..length {
            letters.push(v as Letter);
            v = succ[v][rng.random_range(0..succ[v].len())];
        }
        Ok(OrbitSegment::from_word(Word::new(g.labels.clone(), letters)?))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sft {\n");
        for (v, label) in self.labels.symbols().iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -> v{b};");
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for SftPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for label in self.labels.symbols() {
            writeln!(f, "vertex {label}")?;
        }
        for &(a, b) in &self.edges {
            writeln!(
                f,
                "edge {} {}",
                self.labels.symbol(a as Letter),
                self.labels.symbol(b as Letter)
            )?;
        }
        Ok(())
    }
}

impl SoficPresentation {
    /// Graph on named vertices with labelled edges `(from, to, label)`.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        labels: Alphabet,
        edges: impl IntoIterator<Item = (usize, usize, Letter)>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        if let Some(dup) = vertices.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::InvalidPresentation(format!("duplicate vertex `{dup}`")));
        }
        let edges: BTreeSet<(usize, usize, Letter)> = edges.into_iter().collect();
        for &(a, b, l) in &edges {
            if a >= vertices.len() || b >= vertices.len() || l as usize >= labels.len() {
                return Err(Error::InvalidPresentation(format!("bad edge {a} -> {b} [{l}]")));
            }
        }
        Ok(SoficPresentation { vertices, labels, edges })
    }

    /// Even shift: runs of `0` between two `1`s have even length.
    pub fn even_shift() -> Self {
        Self::new(["a", "b"], Alphabet::binary(), [(0, 0, 1), (0, 1, 0), (1, 0, 0)])
            .expect("valid edges")
    }

    pub fn labels(&self) -> &Alphabet {
        &self.labels
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize, Letter)> {
        &self.edges
    }

    fn plain_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b, _)| (a, b)).collect()
    }

    pub fn prune(&self) -> Result<Self> {
        let alive = essential_vertices(self.vertices.len(), &self.plain_edges());
        if alive.iter().all(|&a| a) {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&v| alive[v]).collect();
        if keep.is_empty() {
            return Err(Error::InvalidPresentation("no essential vertex".into()));
        }
        let renumber: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize, Letter)> = self
            .edges
            .iter()
            .filter_map(|&(a, b, l)| Some((*renumber.get(&a)?, *renumber.get(&b)?, l)))
            .collect();
        Self::new(keep.iter().map(|&v| self.vertices[v].clone()), self.labels.clone(), edges)
    }

    pub fn is_essential(&self) -> bool {
        essential_vertices(self.vertices.len(), &self.plain_edges()).iter().all(|&a| a)
    }

    /// Edge paths with `len` edges, as sequences of `(from, to, label)`.
    fn paths(&self, len: usize) -> Vec<Vec<(usize, usize, Letter)>> {
        let mut out_edges: Vec<Vec<(usize, usize, Letter)>> = vec![Vec::new(); self.vertices.len()];
        for &e in &self.edges {
            out_edges[e.0].push(e);
        }
        let mut paths: Vec<Vec<(usize, usize, Letter)>> =
            self.edges.iter().map(|&e| vec![e]).collect();
        for _ in 1..len {
            paths = paths
                .into_iter()
                .flat_map(|p| {
                    let end = p.last().expect("non-empty path").1;
                    out_edges[end].iter().map(move |&e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        paths
    }

    /// Label words of `n`-edge paths (the presentation must be essential).
    pub fn language(&self, n: usize) -> BTreeSet<Word> {
        if n == 0 {
            return BTreeSet::new();
        }
        self.paths(n)
            .into_iter()
            .map(|p| {
                Word::new(self.labels.clone(), p.into_iter().map(|e| e.2).collect())
                    .expect("labels in range")
            })
            .collect()
    }

    /// Seeded random walk, read off the edge labels.
    pub fn random_walk(&self, length: usize, seed: u64) -> Result<OrbitSegment> {
        let g = self.prune()?;
        let mut out_edges: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); g.vertices.len()];
        for &(a, b, l) in &g.edges {
            out_edges[a].push((b, l));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = rng.random_range(0..g.vertices.len());
        let mut letters = Vec::with_capacity(length);
        for _ in 0..length {
            let (next, l) = out_edges[v][rng.random_range(0..out_edges[v].len())];
            letters.push(l);
            v = next;
        }
        Ok(OrbitSegment::from_word(Word::new(g.labels.clone(), letters)?))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sofic {\n");
        for (v, name) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{name}\"];");
        }
        for &(a, b, l) in &self.edges {
            let _ = writeln!(out, "  v{a} -> v{b} [label=\"{}\"];", self.labels.symbol(l));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for SoficPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for &(a, b, l) in &self.edges {
            writeln!(f, "edge {} {} {}", self.vertices[a], self.vertices[b], self.labels.symbol(l))?;
        }
        Ok(())
    }
}

impl Presentation {
    /// Parses `vertex <label>` / `edge <from> <to> [label]` lines. Any edge label
    /// makes the presentation sofic; then every edge needs one.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, usize, Option<String>, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            match parts.as_slice() {
                ["vertex", name] => {
                    if index.insert(name.to_string(), vertices.len()).is_some() {
                        return Err(err("duplicate vertex"));
                    }
                    vertices.push(name.to_string());
                }
                ["edge", from, to, rest @ ..] if rest.len() <= 1 => {
                    let a = *index.get(*from).ok_or_else(|| err("unknown source vertex"))?;
                    let b = *index.get(*to).ok_or_else(|| err("unknown target vertex"))?;
                    edges.push((a, b, rest.first().map(|s| s.to_string()), line_no));
                }
                _ => return Err(err("expected `vertex <label>` or `edge <from> <to> [label]`")),
            }
        }
        if vertices.is_empty() {
            return Err(Error::InvalidPresentation("no vertices".into()));
        }
        let labelled = edges.iter().filter(|e| e.2.is_some()).count();
        if labelled == 0 {
            let labels = Alphabet::new(vertices)?;
            return Ok(Presentation::Sft(SftPresentation::new(
                labels,
                edges.into_iter().map(|(a, b, _, _)| (a, b)),
            )?));
        }
        if let Some(e) = edges.iter().find(|e| e.2.is_none()) {
            return Err(Error::Parse { line: e.3, msg: "sofic edges need a label".into() });
        }
        let symbols: BTreeSet<&str> = edges.iter().filter_map(|e| e.2.as_deref()).collect();
        let labels = Alphabet::new(symbols.iter().copied())?;
        let edges = edges
            .iter()
            .map(|(a, b, l, _)| Ok((*a, *b, labels.letter(l.as_deref().expect("labelled"))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation::Sofic(SoficPresentation::new(vertices, labels, edges)?))
    }

    pub fn labels(&self) -> &Alphabet {
        match self {
            Presentation::Sft(g) => g.labels(),
            Presentation::Sofic(g) => g.labels(),
        }
    }

    pub fn prune(&self) -> Result<Self> {
        Ok(match self {
            Presentation::Sft(g) => Presentation::Sft(g.prune()?),
            Presentation::Sofic(g) => Presentation::Sofic(g.prune()?),
        })
    }

    pub fn to_dot(&self) -> String {
        match self {
            Presentation::Sft(g) => g.to_dot(),
            Presentation::Sofic(g) => g.to_dot(),
        }
    }

    pub fn random_walk(&self, length: usize, seed: u64) -> Result<OrbitSegment> {
        match self {
            Presentation::Sft(g) => g.random_walk(length, seed),
            Presentation::Sofic(g) => g.random_walk(length, seed),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::Sft(g) => g.fmt(f),
            Presentation::Sofic(g) => g.fmt(f),
        }
    }
}

/// Label words of length `n` of either kind of presentation.
pub fn language_of_presentation(presentation: &Presentation, n: usize) -> BTreeSet<Word> {
    match presentation {
        Presentation::Sft(g) => g.language(n),
        Presentation::Sofic(g) => g.language(n),
    }
}

/// `M`-block presentation and the label-word behind each block vertex.
fn block_graph(sft: &SftPresentation, m: usize) -> Result<(SftPresentation, Vec<Vec<Letter>>)> {
    if m == 0 {
        return Err(Error::InvalidSpec("block length must be at least 1".into()));
    }
    let sft = sft.prune()?;
    let blocks: Vec<Vec<Letter>> = sft
        .paths(m)
        .into_iter()
        .map(|p| p.into_iter().map(|v| v as Letter).collect())
        .collect();
    if blocks.is_empty() {
        return Err(Error::InvalidPresentation(format!("no admissible {m}-block")));
    }
    let by_prefix: HashMap<&[Letter], Vec<usize>> =
        blocks.iter().enumerate().fold(HashMap::new(), |mut acc, (i, b)| {
            acc.entry(&b[..m - 1]).or_default().push(i);
            acc
        });
    let mut edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let last = *b.last().expect("non-empty block") as usize;
        for &j in by_prefix.get(&b[1..]).map(Vec::as_slice).unwrap_or(&[]) {
            if m > 1 || sft.edges.contains(&(last, blocks[j][0] as usize)) {
                edges.push((i, j));
            }
        }
    }
    let labels = Alphabet::new(blocks.iter().map(|b| label_text(&sft.labels, b)))?;
    let graph = SftPresentation::new(labels, edges)?;
    // Paths of an essential graph extend both ways, so every block is essential.
    debug_assert!(graph.is_essential());
    Ok((graph, blocks))
}

/// `M`-block recoding: vertices are admissible `M`-blocks, edges join
/// overlapping blocks.
pub fn block_presentation(sft: &SftPresentation, m: usize) -> Result<SftPresentation> {
    block_graph(sft, m).map(|(g, _)| g)
}

/// Jump data read off the centred `(2K+1)`-words of a language.
struct JumpGeometry {
    p_max: usize,
    radius: usize,
    half: usize,
}

impl JumpGeometry {
    fn new(jump: &JumpFunction, centred: &BTreeSet<Word>) -> Result<Self> {
        let mut p_max = 1;
        for w in centred {
            p_max = p_max.max(jump.value(w.letters())?);
        }
        let radius = jump.effective_radius(centred.iter().map(|w| w.letters()))?;
        Ok(JumpGeometry { p_max, radius, half: p_max.max(radius) })
    }

    fn block_len(&self) -> usize {
        2 * self.half + 1
    }
}

/// Rebuilds the S-pattern of `blocks.len() - 1` steps from the blocks centred
/// on consecutive landings.
fn pattern_from_blocks(blocks: &[&[Letter]], jump: &JumpFunction, half: usize, alphabet: &Alphabet) -> Result<SPattern> {
    let k = jump.radius();
    let n = blocks.len() - 1;
    let mut letters: Vec<Letter> = blocks[0].to_vec();
    let mut centre = half;
    for pair in blocks.windows(2) {
        let step = jump.value(&pair[0][half - k..=half + k])?;
        centre += step;
        let start = centre - half;
        for (off, &l) in pair[1].iter().enumerate() {
            match letters.get(start + off) {
                Some(&existing) if existing != l => {
                    return Err(Error::InvalidPresentation("inconsistent block overlap".into()))
                }
                Some(_) => {}
                None => letters.push(l),
            }
        }
    }
    let spanned = Word::new(alphabet.clone(), letters[half - k..centre + k].to_vec())?;
    SPattern::from_spanned(spanned, jump, n)
}

/// Speedup presentation of an SFT.
#[derive(Debug, Clone)]
pub struct SftSpeedup {
    pub presentation: SftPresentation,
    pub base: Alphabet,
    pub block_len: usize,
    pub p_max: usize,
    /// Radius `N` on which the jump is constant.
    pub radius: usize,
    blocks: Vec<Vec<Letter>>,
    jump: JumpFunction,
}

impl SftSpeedup {
    /// Base-alphabet block behind vertex `v`.
    pub fn block(&self, v: usize) -> &[Letter] {
        &self.blocks[v]
    }

    /// S-patterns of length `n` read along paths of `n + 1` vertices.
    pub fn pattern_language(&self, n: usize) -> Result<BTreeSet<SPattern>> {
        let half = self.block_len / 2;
        self.presentation
            .paths(n + 1)
            .into_iter()
            .map(|p| {
                let blocks: Vec<&[Letter]> = p.iter().map(|&v| self.blocks[v].as_slice()).collect();
                pattern_from_blocks(&blocks, &self.jump, half, &self.base)
            })
            .collect()
    }
}

/// Speedup of an SFT: from each `M`-block vertex `v`, one edge per admissible
/// path of `p(v)` steps, ending at the block reached after `p(v)` shifts.
pub fn speedup_sft(sft: &SftPresentation, jump: &JumpFunction) -> Result<SftSpeedup> {
    let sft = sft.prune()?;
    jump.check_alphabet(sft.labels())?;
    let geometry = JumpGeometry::new(jump, &sft.language(2 * jump.radius() + 1))?;
    let m = geometry.block_len();
    let (blocks_graph, blocks) = block_graph(&sft, m)?;
    let succ = successors(blocks.len(), blocks_graph.edges.iter().copied());
    let half = geometry.half;
    let k = jump.radius();
    let mut edges = BTreeSet::new();
    for (v, block) in blocks.iter().enumerate() {
        let p = jump.value(&block[half - k..=half + k])?;
        let mut frontier = vec![v];
        for _ in 0..p {
            frontier = frontier.iter().flat_map(|&u| succ[u].iter().copied()).collect();
            frontier.sort_unstable();
            frontier.dedup();
        }
        edges.extend(frontier.into_iter().map(|t| (v, t)));
    }
    let presentation = SftPresentation::new(blocks_graph.labels.clone(), edges)?;
    let (presentation, blocks) = prune_with_payload(presentation, blocks)?;
    Ok(SftSpeedup {
        presentation,
        base: sft.labels().clone(),
        block_len: m,
        p_max: geometry.p_max,
        radius: geometry.radius,
        blocks,
        jump: jump.clone(),
    })
}

fn prune_with_payload(
    g: SftPresentation,
    blocks: Vec<Vec<Letter>>,
) -> Result<(SftPresentation, Vec<Vec<Letter>>)> {
    let pruned = g.prune()?;
    if pruned.vertex_count() == g.vertex_count() {
        return Ok((pruned, blocks));
    }
    let by_label: BTreeMap<&str, &Vec<Letter>> = g
        .labels
        .symbols()
        .iter()
        .map(String::as_str)
        .zip(blocks.iter())
        .collect();
    let kept = pruned.labels.symbols().iter().map(|s| by_label[s.as_str()].clone()).collect();
    Ok((pruned, kept))
}

/// Speedup presentation of a sofic shift.
#[derive(Debug, Clone)]
pub struct SoficSpeedup {
    pub presentation: SoficPresentation,
    pub base: Alphabet,
    pub block_len: usize,
    pub p_max: usize,
    pub radius: usize,
    /// Base-alphabet block behind each label symbol.
    label_blocks: Vec<Vec<Letter>>,
    jump: JumpFunction,
}

impl SoficSpeedup {
    pub fn label_block(&self, label: Letter) -> &[Letter] {
        &self.label_blocks[label as usize]
    }

    /// S-patterns of length `n` read along paths of `n + 1` edges.
    pub fn pattern_language(&self, n: usize) -> Result<BTreeSet<SPattern>> {
        let half = self.block_len / 2;
        self.presentation
            .paths(n + 1)
            .into_iter()
            .map(|p| {
                let blocks: Vec<&[Letter]> =
                    p.iter().map(|e| self.label_blocks[e.2 as usize].as_slice()).collect();
                pattern_from_blocks(&blocks, &self.jump, half, &self.base)
            })
            .collect()
    }
}

/// Speedup of a sofic shift. Vertices are `M`-edge paths `π`; from `π` there
/// is one edge per way of extending it by `p` edges (`p` read from its label
/// block), leading to the path shifted by `p` and labelled with the block of `π`.
pub fn speedup_sofic(sofic: &SoficPresentation, jump: &JumpFunction) -> Result<SoficSpeedup> {
    let g = sofic.prune()?;
    jump.check_alphabet(g.labels())?;
    let geometry = JumpGeometry::new(jump, &g.language(2 * jump.radius() + 1))?;
    let m = geometry.block_len();
    let half = geometry.half;
    let k = jump.radius();
    let paths = g.paths(m);
    if paths.is_empty() {
        return Err(Error::InvalidPresentation(format!("no admissible {m}-block")));
    }
    let index: HashMap<&[(usize, usize, Letter)], usize> =
        paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut out_edges: Vec<Vec<(usize, usize, Letter)>> = vec![Vec::new(); g.vertices.len()];
    for &e in &g.edges {
        out_edges[e.0].push(e);
    }
    let mut label_index: HashMap<Vec<Letter>, Letter> = HashMap::new();
    let mut label_blocks: Vec<Vec<Letter>> = Vec::new();
    let mut edges = Vec::new();
    for (i, path) in paths.iter().enumerate() {
        let block: Vec<Letter> = path.iter().map(|e| e.2).collect();
        let p = jump.value(&block[half - k..=half + k])?;
        let next_label = label_blocks.len() as Letter;
        let label = *label_index.entry(block.clone()).or_insert_with(|| {
            label_blocks.push(block.clone());
            next_label
        });
        let mut continuations: Vec<Vec<(usize, usize, Letter)>> = vec![path.clone()];
        for _ in 0..p {
            continuations = continuations
                .into_iter()
                .flat_map(|c| {
                    let end = c.last().expect("non-empty").1;
                    out_edges[end].iter().map(move |&e| {
                        let mut d = c.clone();
                        d.push(e);
                        d
                    })
                })
                .collect();
        }
        for c in continuations {
            let target = index[&c[p..]];
            edges.push((i, target, label));
        }
    }
    let labels = Alphabet::new(label_blocks.iter().map(|b| label_text(g.labels(), b)))?;
    let names: Vec<String> = (0..paths.len()).map(|i| format!("q{i}")).collect();
    let presentation = SoficPresentation::new(names, labels, edges)?.prune()?;
    Ok(SoficSpeedup {
        presentation,
        base: g.labels().clone(),
        block_len: m,
        p_max: geometry.p_max,
        radius: geometry.radius,
        label_blocks,
        jump: jump.clone(),
    })
}

/// S-patterns of length `n` found by running the speedup over every
/// admissible word of length `p_max n + 2K`. Independent of the graph
/// constructions and used as their oracle.
pub fn enumerated_patterns(presentation: &Presentation, jump: &JumpFunction, n: usize) -> Result<BTreeSet<SPattern>> {
    let g = presentation.prune()?;
    jump.check_alphabet(g.labels())?;
    let centred = language_of_presentation(&g, 2 * jump.radius() + 1);
    let mut p_max = 1;
    for w in &centred {
        p_max = p_max.max(jump.value(w.letters())?);
    }
    let mut out = BTreeSet::new();
    for w in language_of_presentation(&g, p_max * n + 2 * jump.radius()) {
        out.extend(spatterns(&OrbitSegment::from_word(w), jump, n)?);
    }
    Ok(out)
}

/// Either speedup construction.
#[derive(Debug, Clone)]
pub enum SpeedupPresentation {
    Sft(SftSpeedup),
    Sofic(SoficSpeedup),
}

impl SpeedupPresentation {
    pub fn build(presentation: &Presentation, jump: &JumpFunction) -> Result<Self> {
        Ok(match presentation {
            Presentation::Sft(g) => SpeedupPresentation::Sft(speedup_sft(g, jump)?),
            Presentation::Sofic(g) => SpeedupPresentation::Sofic(speedup_sofic(g, jump)?),
        })
    }

    pub fn presentation(&self) -> Presentation {
        match self {
            SpeedupPresentation::Sft(s) => Presentation::Sft(s.presentation.clone()),
            SpeedupPresentation::Sofic(s) => Presentation::Sofic(s.presentation.clone()),
        }
    }

    pub fn block_len(&self) -> usize {
        match self {
            SpeedupPresentation::Sft(s) => s.block_len,
            SpeedupPresentation::Sofic(s) => s.block_len,
        }
    }

    pub fn p_max(&self) -> usize {
        match self {
            SpeedupPresentation::Sft(s) => s.p_max,
            SpeedupPresentation::Sofic(s) => s.p_max,
        }
    }

    pub fn radius(&self) -> usize {
        match self {
            SpeedupPresentation::Sft(s) => s.radius,
            SpeedupPresentation::Sofic(s) => s.radius,
        }
    }

    pub fn pattern_language(&self, n: usize) -> Result<BTreeSet<SPattern>> {
        match self {
            SpeedupPresentation::Sft(s) => s.pattern_language(n),
            SpeedupPresentation::Sofic(s) => s.pattern_language(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(words: &BTreeSet<Word>) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn golden_mean_language() {
        let g = SftPresentation::golden_mean();
        assert_eq!(strings(&g.language(3)), vec!["000", "001", "010", "100", "101"]);
    }

    #[test]
    fn full_shift_language_and_blocks() {
        let g = SftPresentation::full(Alphabet::binary());
        for n in 1..=6 {
            assert_eq!(g.language(n).len(), 1 << n);
        }
        let b = block_presentation(&g, 2).unwrap();
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.edges().len(), 8);
    }

    #[test]
    fn golden_mean_two_blocks() {
        let b = block_presentation(&SftPresentation::golden_mean(), 2).unwrap();
        assert_eq!(b.labels().symbols(), &["00", "01", "10"]);
        let edges: Vec<(String, String)> = b
            .edges()
            .iter()
            .map(|&(x, y)| {
                (b.labels().symbol(x as Letter).to_string(), b.labels().symbol(y as Letter).to_string())
            })
            .collect();
        let expect = [("00", "00"), ("00", "01"), ("01", "10"), ("10", "00"), ("10", "01")];
        assert_eq!(edges.len(), expect.len());
        for (x, y) in expect {
            assert!(edges.contains(&(x.to_string(), y.to_string())));
        }
    }

    #[test]
    fn one_block_recoding_is_identity() {
        let g = SftPresentation::golden_mean();
        assert_eq!(block_presentation(&g, 1).unwrap(), g);
        assert!(block_presentation(&g, 0).is_err());
    }

    #[test]
    fn pruning() {
        // vertex 2 has no outgoing edge
        let g = SftPresentation::new(Alphabet::from_chars("abc").unwrap(), [(0, 0), (0, 1), (1, 0), (1, 2)])
            .unwrap();
        assert!(!g.is_essential());
        let p = g.prune().unwrap();
        assert_eq!(p.labels().symbols(), &["a", "b"]);
        assert_eq!(p.prune().unwrap(), p);
        let dead = SftPresentation::new(Alphabet::from_chars("ab").unwrap(), [(0, 1)]).unwrap();
        assert!(dead.prune().is_err());
    }

    #[test]
    fn even_shift_language() {
        let g = SoficPresentation::even_shift();
        let l3 = strings(&g.language(3));
        assert!(!l3.contains(&"101".to_string()));
        assert!(l3.contains(&"100".to_string()));
        assert!(strings(&g.language(4)).contains(&"1001".to_string()));
    }

    #[test]
    fn presentation_text_round_trip() {
        let sft_text = "vertex 0\nvertex 1\nedge 0 0\nedge 0 1\nedge 1 0\n";
        let p = Presentation::parse(sft_text).unwrap();
        assert_eq!(p, Presentation::Sft(SftPresentation::golden_mean()));
        assert_eq!(p.to_string(), sft_text);
        let sofic_text = "vertex a\nvertex b\nedge a a 1\nedge a b 0\nedge b a 0\n";
        let q = Presentation::parse(sofic_text).unwrap();
        assert_eq!(q, Presentation::Sofic(SoficPresentation::even_shift()));
        assert_eq!(q.to_string(), sofic_text);
        assert!(Presentation::parse("vertex a\nedge a b").is_err());
        assert!(Presentation::parse("vertex a\nvertex a").is_err());
        assert!(Presentation::parse("vertex a\nvertex b\nedge a b 0\nedge b a").is_err());
        assert!(Presentation::parse("node a").is_err());
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let dot = SoficPresentation::even_shift().to_dot();
        assert!(dot.starts_with("digraph sofic {"));
        assert_eq!(dot.matches("->").count(), 3);
        let dot = SftPresentation::golden_mean().to_dot();
        assert_eq!(dot.matches("->").count(), 3);
    }

    #[test]
    fn random_walk_stays_in_language() {
        let g = SftPresentation::golden_mean();
        let s = g.random_walk(500, 7).unwrap();
        assert!(!s.to_string().contains("11"));
        assert_eq!(s, g.random_walk(500, 7).unwrap());
    }

    #[test]
    fn full_shift_speedup_by_two_has_four_to_the_n_patterns() {
        let sp = speedup_sft(&SftPresentation::full(Alphabet::binary()), &JumpFunction::constant(2).unwrap())
            .unwrap();
        assert_eq!(sp.block_len, 5);
        for n in 1..=4 {
            assert_eq!(sp.pattern_language(n).unwrap().len(), 1 << (2 * n));
        }
    }

    #[test]
    fn speedup_requires_total_jump() {
        let partial = JumpFunction::table(Alphabet::binary(), 0, [(vec![0], 1)]).unwrap();
        let err = speedup_sft(&SftPresentation::golden_mean(), &partial).unwrap_err();
        assert!(matches!(err, Error::MissingJump(_)));
    }
}
