//! Line-oriented file formats: algebras with optional p-maps, morphisms,
//! envelopes, bilinear forms and partial target maps, plus the canonical
//! emitter whose output parses back to the same data.
//!
//! Grammar (one relation per line, `#` starts a comment):
//!
//! ```text
//! p 2
//! dim 3
//! names e f z
//! alpha e = e
//! bracket e f = z
//! pmap e = z
//! ```
//!
//! Linear combinations are `+`-joined terms `c*name` or `name`, or the
//! literal `0`. Coefficients must already be reduced into `[0, p)`.
//! Unspecified brackets default to zero with antisymmetry filled in;
//! unspecified twist lines default to the identity on that basis vector.
//! When any `pmap` line is present, every basis name needs one.

use homlie::algebra::{HomLieAlgebra, Limits};
use homlie::gfp::{MatFp, Scalar, VecFp};
use homlie::restricted::PStructure;
use homlie::{HomMorphism, PEnvelope};
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug)]
pub enum FileError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, ParseError),
    Validation(PathBuf, String),
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            FileError::Parse(path, e) => write!(f, "{}: {e}", path.display()),
            FileError::Validation(path, msg) => write!(f, "{}: {msg}", path.display()),
        }
    }
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn is_name(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A parsed linear combination: (coefficient, name) pairs.
fn parse_expr_terms(
    expr: &str,
    line_no: usize,
    col_base: usize,
) -> Result<Vec<(u32, String)>, ParseError> {
    let trimmed = expr.trim();
    if trimmed.is_empty() {
        return Err(err(line_no, col_base, "empty expression"));
    }
    if trimmed == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    for part in trimmed.split('+') {
        let piece = part.trim();
        if piece.is_empty() {
            return Err(err(line_no, col_base, "empty term in expression"));
        }
        if let Some((coeff, name)) = piece.split_once('*') {
            let coeff = coeff.trim();
            let name = name.trim();
            let value: u32 = coeff
                .parse()
                .map_err(|_| err(line_no, col_base, format!("bad coefficient `{coeff}`")))?;
            if !is_name(name) {
                return Err(err(line_no, col_base, format!("bad name `{name}`")));
            }
            terms.push((value, name.to_string()));
        } else if is_name(piece) {
            terms.push((1, piece.to_string()));
        } else if piece == "0" {
            // A zero term contributes nothing.
        } else {
            return Err(err(line_no, col_base, format!("bad term `{piece}`")));
        }
    }
    Ok(terms)
}

fn resolve_expr(
    terms: &[(u32, String)],
    p: u32,
    names: &[String],
    line_no: usize,
) -> Result<VecFp, ParseError> {
    let mut v = VecFp::zeros(p, names.len());
    for (coeff, name) in terms {
        if *coeff >= p {
            return Err(err(
                line_no,
                1,
                format!("coefficient {coeff} is not reduced modulo {p}"),
            ));
        }
        let Some(idx) = names.iter().position(|n| n == name) else {
            return Err(err(line_no, 1, format!("unknown name `{name}`")));
        };
        v.set(idx, v.get(idx).add(Scalar::new(*coeff as i64, p)));
    }
    Ok(v)
}

/// Parses an element expression against an algebra's basis names; used for
/// command-line flags such as `--x "h+2*x"`.
pub fn parse_element(expr: &str, algebra: &HomLieAlgebra) -> Result<VecFp, String> {
    let terms = parse_expr_terms(expr, 1, 1).map_err(|e| e.message)?;
    resolve_expr(&terms, algebra.p(), algebra.names(), 1).map_err(|e| e.message)
}

/// Comma-separated element expressions.
pub fn parse_elements(list: &str, algebra: &HomLieAlgebra) -> Result<Vec<VecFp>, String> {
    list.split(',')
        .map(|piece| parse_element(piece.trim(), algebra))
        .collect()
}

pub struct ParsedAlgebra {
    pub algebra: HomLieAlgebra,
    pub pmap: Option<PStructure>,
}

struct RawLine {
    no: usize,
    tokens: Vec<String>,
    rhs: Option<String>,
}

fn tokenize(text: &str) -> Result<Vec<RawLine>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let stripped = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if stripped.trim().is_empty() {
            continue;
        }
        let (head, rhs) = match stripped.find('=') {
            Some(pos) => (&stripped[..pos], Some(stripped[pos + 1..].to_string())),
            None => (stripped, None),
        };
        let tokens: Vec<String> = head.split_whitespace().map(|t| t.to_string()).collect();
        if tokens.is_empty() {
            return Err(err(no, 1, "missing directive before `=`"));
        }
        out.push(RawLine { no, tokens, rhs });
    }
    Ok(out)
}

/// Parses and validates an algebra file. Validation requires the alternating,
/// Hom-Jacobi and multiplicativity axioms; the remaining flags are reported
/// by the commands, not enforced here.
pub fn parse_algebra_text(text: &str, limits: Limits) -> Result<ParsedAlgebra, ParseError> {
    let lines = tokenize(text)?;
    let mut p: Option<u32> = None;
    let mut dim: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut alpha_lines: Vec<(usize, String, Vec<(u32, String)>)> = Vec::new();
    let mut bracket_lines: Vec<(usize, String, String, Vec<(u32, String)>)> = Vec::new();
    let mut pmap_lines: Vec<(usize, String, Vec<(u32, String)>)> = Vec::new();

    for line in &lines {
        let word = line.tokens[0].as_str();
        match word {
            "p" => {
                if p.is_some() {
                    return Err(err(line.no, 1, "duplicate `p` line"));
                }
                if line.tokens.len() != 2 || line.rhs.is_some() {
                    return Err(err(line.no, 1, "expected `p <prime>`"));
                }
                let value: u32 = line.tokens[1]
                    .parse()
                    .map_err(|_| err(line.no, 3, "bad prime"))?;
                p = Some(value);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(err(line.no, 1, "duplicate `dim` line"));
                }
                if line.tokens.len() != 2 || line.rhs.is_some() {
                    return Err(err(line.no, 1, "expected `dim <n>`"));
                }
                let value: usize = line.tokens[1]
                    .parse()
                    .map_err(|_| err(line.no, 5, "bad dimension"))?;
                dim = Some(value);
            }
            "names" => {
                if names.is_some() {
                    return Err(err(line.no, 1, "duplicate `names` line"));
                }
                if line.tokens.len() < 2 || line.rhs.is_some() {
                    return Err(err(line.no, 1, "expected `names <n1> <n2> ...`"));
                }
                for t in &line.tokens[1..] {
                    if !is_name(t) {
                        return Err(err(line.no, 1, format!("bad name `{t}`")));
                    }
                }
                names = Some(line.tokens[1..].to_vec());
            }
            "alpha" => {
                if line.tokens.len() != 2 {
                    return Err(err(line.no, 1, "expected `alpha <name> = <expr>`"));
                }
                let rhs = line
                    .rhs
                    .as_ref()
                    .ok_or_else(|| err(line.no, 1, "missing `=` in alpha line"))?;
                let terms = parse_expr_terms(rhs, line.no, 1)?;
                alpha_lines.push((line.no, line.tokens[1].clone(), terms));
            }
            "bracket" => {
                if line.tokens.len() != 3 {
                    return Err(err(line.no, 1, "expected `bracket <a> <b> = <expr>`"));
                }
                let rhs = line
                    .rhs
                    .as_ref()
                    .ok_or_else(|| err(line.no, 1, "missing `=` in bracket line"))?;
                let terms = parse_expr_terms(rhs, line.no, 1)?;
                bracket_lines.push((
                    line.no,
                    line.tokens[1].clone(),
                    line.tokens[2].clone(),
                    terms,
                ));
            }
            "pmap" => {
                if line.tokens.len() != 2 {
                    return Err(err(line.no, 1, "expected `pmap <name> = <expr>`"));
                }
                let rhs = line
                    .rhs
                    .as_ref()
                    .ok_or_else(|| err(line.no, 1, "missing `=` in pmap line"))?;
                let terms = parse_expr_terms(rhs, line.no, 1)?;
                pmap_lines.push((line.no, line.tokens[1].clone(), terms));
            }
            other => {
                return Err(err(line.no, 1, format!("unknown directive `{other}`")));
            }
        }
    }

    let p = p.ok_or_else(|| err(1, 1, "missing `p` line"))?;
    let dim = dim.ok_or_else(|| err(1, 1, "missing `dim` line"))?;
    let names = names.ok_or_else(|| err(1, 1, "missing `names` line"))?;
    if names.len() != dim {
        return Err(err(1, 1, format!("dim {} but {} names", dim, names.len())));
    }
    if !homlie::gfp::is_prime(p) {
        return Err(err(1, 1, format!("p = {p} is not prime")));
    }

    let index_of = |name: &str, line_no: usize| -> Result<usize, ParseError> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| err(line_no, 1, format!("unknown name `{name}`")))
    };

    // Twist defaults to the identity on unspecified basis vectors.
    let mut alpha = MatFp::identity(p, dim);
    let mut seen_alpha = vec![false; dim];
    for (line_no, name, terms) in &alpha_lines {
        let j = index_of(name, *line_no)?;
        if seen_alpha[j] {
            return Err(err(*line_no, 1, format!("duplicate alpha line for `{name}`")));
        }
        seen_alpha[j] = true;
        let col = resolve_expr(terms, p, &names, *line_no)?;
        for i in 0..dim {
            alpha.set(i, j, col.get(i));
        }
    }

    let mut pairs: Vec<(usize, usize, VecFp)> = Vec::new();
    let mut seen_pairs: Vec<(usize, usize)> = Vec::new();
    for (line_no, a, b, terms) in &bracket_lines {
        let i = index_of(a, *line_no)?;
        let j = index_of(b, *line_no)?;
        let v = resolve_expr(terms, p, &names, *line_no)?;
        if i == j {
            if !v.is_zero() {
                return Err(err(*line_no, 1, "diagonal bracket must be zero"));
            }
            continue;
        }
        let key = (i.min(j), i.max(j));
        if seen_pairs.contains(&key) {
            return Err(err(
                *line_no,
                1,
                format!("bracket pair ({a}, {b}) given twice (antisymmetry is automatic)"),
            ));
        }
        seen_pairs.push(key);
        if i < j {
            pairs.push((i, j, v));
        } else {
            pairs.push((j, i, v.neg()));
        }
    }

    let algebra =
        HomLieAlgebra::from_bracket_pairs_with_limits(p, names.clone(), &pairs, alpha, limits)
            .map_err(|e| err(1, 1, e.to_string()))?;

    let pmap = if pmap_lines.is_empty() {
        None
    } else {
        let mut images: Vec<Option<VecFp>> = vec![None; dim];
        for (line_no, name, terms) in &pmap_lines {
            let j = index_of(name, *line_no)?;
            if images[j].is_some() {
                return Err(err(*line_no, 1, format!("duplicate pmap line for `{name}`")));
            }
            images[j] = Some(resolve_expr(terms, p, &names, *line_no)?);
        }
        let mut resolved = Vec::with_capacity(dim);
        for (j, img) in images.into_iter().enumerate() {
            match img {
                Some(v) => resolved.push(v),
                None => {
                    return Err(err(
                        1,
                        1,
                        format!("pmap line missing for `{}` (all or none)", names[j]),
                    ))
                }
            }
        }
        Some(resolved)
    };

    // Validation gate: the three defining axioms must hold.
    let report = algebra.axiom_report();
    if !report.is_multiplicative_hom_lie() {
        let detail = report
            .counterexample
            .map(|c| format!("{} fails at basis indices {:?}", c.check, c.indices))
            .unwrap_or_else(|| "axiom violation".to_string());
        return Err(err(1, 1, format!("validation failed: {detail}")));
    }

    let pmap = match pmap {
        Some(images) => Some(
            PStructure::new(&algebra, images)
                .map_err(|e| err(1, 1, format!("bad pmap section: {e}")))?,
        ),
        None => None,
    };

    Ok(ParsedAlgebra { algebra, pmap })
}

pub fn load_algebra(path: &Path, limits: Limits) -> Result<ParsedAlgebra, FileError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| FileError::Io(path.to_path_buf(), e))?;
    parse_algebra_text(&text, limits).map_err(|e| FileError::Parse(path.to_path_buf(), e))
}

/// Partial targets file: `pmap <name> = <expr>` lines only.
pub fn load_targets(
    path: &Path,
    algebra: &HomLieAlgebra,
) -> Result<Vec<Option<VecFp>>, FileError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| FileError::Io(path.to_path_buf(), e))?;
    let lines = tokenize(&text).map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
    let mut targets: Vec<Option<VecFp>> = vec![None; algebra.dim()];
    for line in &lines {
        if line.tokens[0] != "pmap" || line.tokens.len() != 2 {
            return Err(FileError::Parse(
                path.to_path_buf(),
                err(line.no, 1, "targets files contain only `pmap <name> = <expr>` lines"),
            ));
        }
        let rhs = line.rhs.as_ref().ok_or_else(|| {
            FileError::Parse(path.to_path_buf(), err(line.no, 1, "missing `=`"))
        })?;
        let terms = parse_expr_terms(rhs, line.no, 1)
            .map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
        let j = algebra
            .name_index(&line.tokens[1])
            .ok_or_else(|| {
                FileError::Parse(
                    path.to_path_buf(),
                    err(line.no, 1, format!("unknown name `{}`", line.tokens[1])),
                )
            })?;
        let v = resolve_expr(&terms, algebra.p(), algebra.names(), line.no)
            .map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
        targets[j] = Some(v);
    }
    Ok(targets)
}

pub struct ParsedMorphism {
    pub morphism: HomMorphism,
    pub source_pmap: Option<PStructure>,
    pub target_pmap: Option<PStructure>,
}

/// Morphism file: `source <path>`, `target <path>`, `map <name> = <expr>`
/// (expressions over the target's names; paths resolve relative to the
/// morphism file's directory).
pub fn load_morphism(path: &Path, limits: Limits) -> Result<ParsedMorphism, FileError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| FileError::Io(path.to_path_buf(), e))?;
    let lines = tokenize(&text).map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
    let base_dir = path.parent().unwrap_or(Path::new("."));
    let mut source_path: Option<PathBuf> = None;
    let mut target_path: Option<PathBuf> = None;
    let mut map_lines: Vec<(usize, String, Vec<(u32, String)>)> = Vec::new();
    for line in &lines {
        match line.tokens[0].as_str() {
            "source" | "target" => {
                if line.tokens.len() != 2 || line.rhs.is_some() {
                    return Err(FileError::Parse(
                        path.to_path_buf(),
                        err(line.no, 1, "expected `source|target <path>`"),
                    ));
                }
                let resolved = base_dir.join(&line.tokens[1]);
                if line.tokens[0] == "source" {
                    source_path = Some(resolved);
                } else {
                    target_path = Some(resolved);
                }
            }
            "map" => {
                if line.tokens.len() != 2 {
                    return Err(FileError::Parse(
                        path.to_path_buf(),
                        err(line.no, 1, "expected `map <name> = <expr>`"),
                    ));
                }
                let rhs = line.rhs.as_ref().ok_or_else(|| {
                    FileError::Parse(path.to_path_buf(), err(line.no, 1, "missing `=`"))
                })?;
                let terms = parse_expr_terms(rhs, line.no, 1)
                    .map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
                map_lines.push((line.no, line.tokens[1].clone(), terms));
            }
            other => {
                return Err(FileError::Parse(
                    path.to_path_buf(),
                    err(line.no, 1, format!("unknown directive `{other}` in morphism file")),
                ));
            }
        }
    }
    let source_path = source_path.ok_or_else(|| {
        FileError::Parse(path.to_path_buf(), err(1, 1, "missing `source` line"))
    })?;
    let target_path = target_path.ok_or_else(|| {
        FileError::Parse(path.to_path_buf(), err(1, 1, "missing `target` line"))
    })?;
    let source = load_algebra(&source_path, limits)?;
    let target = load_algebra(&target_path, limits)?;
    let mut cols: Vec<Option<VecFp>> = vec![None; source.algebra.dim()];
    for (line_no, name, terms) in &map_lines {
        let j = source.algebra.name_index(name).ok_or_else(|| {
            FileError::Parse(
                path.to_path_buf(),
                err(*line_no, 1, format!("unknown source name `{name}`")),
            )
        })?;
        if cols[j].is_some() {
            return Err(FileError::Parse(
                path.to_path_buf(),
                err(*line_no, 1, format!("duplicate map line for `{name}`")),
            ));
        }
        let v = resolve_expr(terms, target.algebra.p(), target.algebra.names(), *line_no)
            .map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
        cols[j] = Some(v);
    }
    let mut resolved = Vec::with_capacity(cols.len());
    for (j, col) in cols.into_iter().enumerate() {
        match col {
            Some(v) => resolved.push(v),
            None => {
                return Err(FileError::Parse(
                    path.to_path_buf(),
                    err(
                        1,
                        1,
                        format!("map line missing for `{}`", source.algebra.names()[j]),
                    ),
                ))
            }
        }
    }
    let matrix = MatFp::from_cols(target.algebra.p(), target.algebra.dim(), &resolved);
    let morphism = HomMorphism::new(source.algebra, target.algebra, matrix)
        .map_err(|e| FileError::Validation(path.to_path_buf(), e.to_string()))?;
    Ok(ParsedMorphism {
        morphism,
        source_pmap: source.pmap,
        target_pmap: target.pmap,
    })
}

pub struct ParsedEnvelope {
    pub envelope: PEnvelope,
}

/// Envelope file: `base <path>`, `envelope <path>` (must carry a pmap),
/// `embed <name> = <expr over envelope names>`.
pub fn load_envelope(path: &Path, limits: Limits) -> Result<ParsedEnvelope, FileError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| FileError::Io(path.to_path_buf(), e))?;
    let lines = tokenize(&text).map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
    let base_dir = path.parent().unwrap_or(Path::new("."));
    let mut base_path: Option<PathBuf> = None;
    let mut env_path: Option<PathBuf> = None;
    let mut embed_lines: Vec<(usize, String, Vec<(u32, String)>)> = Vec::new();
    for line in &lines {
        match line.tokens[0].as_str() {
            "base" | "envelope" => {
                if line.tokens.len() != 2 || line.rhs.is_some() {
                    return Err(FileError::Parse(
                        path.to_path_buf(),
                        err(line.no, 1, "expected `base|envelope <path>`"),
                    ));
                }
                let resolved = base_dir.join(&line.tokens[1]);
                if line.tokens[0] == "base" {
                    base_path = Some(resolved);
                } else {
                    env_path = Some(resolved);
                }
            }
            "embed" => {
                if line.tokens.len() != 2 {
                    return Err(FileError::Parse(
                        path.to_path_buf(),
                        err(line.no, 1, "expected `embed <name> = <expr>`"),
                    ));
                }
                let rhs = line.rhs.as_ref().ok_or_else(|| {
                    FileError::Parse(path.to_path_buf(), err(line.no, 1, "missing `=`"))
                })?;
                let terms = parse_expr_terms(rhs, line.no, 1)
                    .map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
                embed_lines.push((line.no, line.tokens[1].clone(), terms));
            }
            other => {
                return Err(FileError::Parse(
                    path.to_path_buf(),
                    err(line.no, 1, format!("unknown directive `{other}` in envelope file")),
                ));
            }
        }
    }
    let base_path = base_path.ok_or_else(|| {
        FileError::Parse(path.to_path_buf(), err(1, 1, "missing `base` line"))
    })?;
    let env_path = env_path.ok_or_else(|| {
        FileError::Parse(path.to_path_buf(), err(1, 1, "missing `envelope` line"))
    })?;
    let base = load_algebra(&base_path, limits)?;
    let env = load_algebra(&env_path, limits)?;
    let env_pmap = env.pmap.ok_or_else(|| {
        FileError::Validation(
            env_path.clone(),
            "envelope algebra file must carry pmap lines".to_string(),
        )
    })?;
    let mut cols: Vec<Option<VecFp>> = vec![None; base.algebra.dim()];
    for (line_no, name, terms) in &embed_lines {
        let j = base.algebra.name_index(name).ok_or_else(|| {
            FileError::Parse(
                path.to_path_buf(),
                err(*line_no, 1, format!("unknown base name `{name}`")),
            )
        })?;
        let v = resolve_expr(
            terms,
            env_pmap.algebra().p(),
            env_pmap.algebra().names(),
            *line_no,
        )
        .map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
        cols[j] = Some(v);
    }
    let mut resolved = Vec::with_capacity(cols.len());
    for (j, col) in cols.into_iter().enumerate() {
        match col {
            Some(v) => resolved.push(v),
            None => {
                return Err(FileError::Parse(
                    path.to_path_buf(),
                    err(
                        1,
                        1,
                        format!("embed line missing for `{}`", base.algebra.names()[j]),
                    ),
                ))
            }
        }
    }
    let embedding = MatFp::from_cols(
        env_pmap.algebra().p(),
        env_pmap.algebra().dim(),
        &resolved,
    );
    let envelope = PEnvelope::new(base.algebra, env_pmap, embedding)
        .map_err(|e| FileError::Validation(path.to_path_buf(), e.to_string()))?;
    Ok(ParsedEnvelope { envelope })
}

/// Form file: `form <name> <name> = <int>` entries; symmetric closure is
/// automatic and conflicting mirror entries are rejected.
pub fn load_form(path: &Path, algebra: &HomLieAlgebra) -> Result<MatFp, FileError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| FileError::Io(path.to_path_buf(), e))?;
    let lines = tokenize(&text).map_err(|e| FileError::Parse(path.to_path_buf(), e))?;
    let p = algebra.p();
    let n = algebra.dim();
    let mut matrix = MatFp::zeros(p, n, n);
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for line in &lines {
        if line.tokens[0] != "form" || line.tokens.len() != 3 {
            return Err(FileError::Parse(
                path.to_path_buf(),
                err(line.no, 1, "expected `form <a> <b> = <int>`"),
            ));
        }
        let rhs = line.rhs.as_ref().ok_or_else(|| {
            FileError::Parse(path.to_path_buf(), err(line.no, 1, "missing `=`"))
        })?;
        let value: u32 = rhs.trim().parse().map_err(|_| {
            FileError::Parse(path.to_path_buf(), err(line.no, 1, "bad form value"))
        })?;
        if value >= p {
            return Err(FileError::Parse(
                path.to_path_buf(),
                err(line.no, 1, format!("form value {value} is not reduced modulo {p}")),
            ));
        }
        let i = algebra.name_index(&line.tokens[1]).ok_or_else(|| {
            FileError::Parse(
                path.to_path_buf(),
                err(line.no, 1, format!("unknown name `{}`", line.tokens[1])),
            )
        })?;
        let j = algebra.name_index(&line.tokens[2]).ok_or_else(|| {
            FileError::Parse(
                path.to_path_buf(),
                err(line.no, 1, format!("unknown name `{}`", line.tokens[2])),
            )
        })?;
        let key = (i.min(j), i.max(j));
        if seen.contains(&key) {
            return Err(FileError::Parse(
                path.to_path_buf(),
                err(line.no, 1, "form entry given twice"),
            ));
        }
        seen.push(key);
        let s = Scalar::new(value as i64, p);
        matrix.set(i, j, s);
        matrix.set(j, i, s);
    }
    Ok(matrix)
}

/// Canonical linear-combination string over basis names.
pub fn expr_string(v: &VecFp, names: &[String]) -> String {
    let mut parts = Vec::new();
    for i in 0..v.len() {
        let c = v.get(i).value();
        match c {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{c}*{}", names[i])),
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Canonical emission; `parse_algebra_text` of the output reproduces the
/// same algebra and p-map.
pub fn emit_algebra(algebra: &HomLieAlgebra, pmap: Option<&PStructure>) -> String {
    let names = algebra.names();
    let mut out = String::new();
    out.push_str(&format!("p {}\n", algebra.p()));
    out.push_str(&format!("dim {}\n", algebra.dim()));
    out.push_str(&format!("names {}\n", names.join(" ")));
    for j in 0..algebra.dim() {
        let col = algebra.alpha().col(j);
        out.push_str(&format!("alpha {} = {}\n", names[j], expr_string(&col, names)));
    }
    for i in 0..algebra.dim() {
        for j in (i + 1)..algebra.dim() {
            let v = algebra.bracket_basis(i, j);
            if !v.is_zero() {
                out.push_str(&format!(
                    "bracket {} {} = {}\n",
                    names[i],
                    names[j],
                    expr_string(v, names)
                ));
            }
        }
    }
    if let Some(pmap) = pmap {
        for j in 0..algebra.dim() {
            out.push_str(&format!(
                "pmap {} = {}\n",
                names[j],
                expr_string(pmap.image(j), names)
            ));
        }
    }
    out
}
