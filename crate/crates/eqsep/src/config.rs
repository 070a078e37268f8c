//! Architecture configuration: the textual spec grammars for groups,
//! subgroups, and representations, and the JSON layer schema consumed by the
//! CLI.
//!
//! Grammar summary (all lowercase, whitespace-insensitive):
//!
//! ```text
//! groupSpec    := cyclic(n) | symmetric(n) | dihedral(n)
//!               | product(groupSpec, groupSpec) | generated([perm, …])
//! subgroupSpec := trivial | full | alternating | generated_subgroup([perm, …])
//! repSpec      := regular | cosets(subgroupSpec) | power(n, k)
//!               | sum(repSpec, repSpec) | mult(repSpec, f)
//! perm         := [i, …]        (one-line image notation, 0-based)
//! ```
//!
//! A config file is a JSON object `{group, activation, layers, limits?}`
//! where each layer is `{source, target, generators, bias}`; `generators` is
//! `"full"`, `"circular(k)"`, `"double_coset"`, or an explicit array of
//! matrices with `"p/q"` entries, and `bias` is `"orbit"`, `"null"`, or an
//! explicit partition as an array of index arrays.

use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::equivariant::{
    circular_layer, commutant_basis, double_coset_basis, Architecture, BiasSpec, EquivariantBasis,
    LayerSpace, PermRep,
};
use crate::exactlin::{parse_rational, RatMatrix, Rational};
use crate::groups::{Group, Permutation, Subgroup};
use crate::partitions::SetPartition;
use crate::separation::EngineLimits;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config is not valid JSON: {0}")]
    Json(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

impl ConfigError {
    fn field(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        ConfigError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

/// Parsed form of the `groupSpec` grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Generated(Vec<Vec<usize>>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut p = Parser::new(text, "group");
        let spec = p.group_spec()?;
        p.finish()?;
        Ok(spec)
    }

    pub fn build(&self) -> Result<Arc<Group>, ConfigError> {
        match self {
            GroupSpec::Cyclic(n) => check_positive(*n).map(Group::cyclic),
            GroupSpec::Symmetric(n) => check_positive(*n).map(Group::symmetric),
            GroupSpec::Dihedral(n) => check_positive(*n).map(Group::dihedral),
            GroupSpec::Product(a, b) => Ok(Group::product(&a.build()?, &b.build()?)),
            GroupSpec::Generated(images) => {
                let perms = images
                    .iter()
                    .map(|im| Permutation::new(im.clone()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ConfigError::field("group", e))?;
                Group::generate(perms).map_err(|e| ConfigError::field("group", e))
            }
        }
    }
}

fn check_positive(n: usize) -> Result<usize, ConfigError> {
    if n == 0 {
        Err(ConfigError::field("group", "size must be positive"))
    } else {
        Ok(n)
    }
}

/// Parsed form of the `subgroupSpec` grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    Full,
    Alternating,
    Generated(Vec<Vec<usize>>),
}

impl SubgroupSpec {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut p = Parser::new(text, "subgroup");
        let spec = p.subgroup_spec()?;
        p.finish()?;
        Ok(spec)
    }

    pub fn build(&self, group: &Arc<Group>, field: &str) -> Result<Subgroup, ConfigError> {
        match self {
            SubgroupSpec::Trivial => Ok(Subgroup::trivial(group)),
            SubgroupSpec::Full => Ok(Subgroup::full(group)),
            SubgroupSpec::Alternating => Ok(Subgroup::alternating(group)),
            SubgroupSpec::Generated(images) => {
                let perms = images
                    .iter()
                    .map(|im| Permutation::new(im.clone()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ConfigError::field(field, e))?;
                Subgroup::generated(group, &perms).map_err(|e| ConfigError::field(field, e))
            }
        }
    }
}

/// Parsed form of the `repSpec` grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSpec {
    Regular,
    Cosets(SubgroupSpec),
    Power { n: usize, k: usize },
    Sum(Box<RepSpec>, Box<RepSpec>),
    Mult(Box<RepSpec>, usize),
}

impl RepSpec {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut p = Parser::new(text, "rep");
        let spec = p.rep_spec()?;
        p.finish()?;
        Ok(spec)
    }

    pub fn build(&self, group: &Arc<Group>, field: &str) -> Result<PermRep, ConfigError> {
        match self {
            RepSpec::Regular => Ok(PermRep::regular(group)),
            RepSpec::Cosets(sub) => {
                let h = sub.build(group, field)?;
                PermRep::from_cosets(group, &h).map_err(|e| ConfigError::field(field, e))
            }
            RepSpec::Power { n, k } => {
                if *n != group.degree() {
                    return Err(ConfigError::field(
                        field,
                        format!(
                            "power({n}, {k}) requires the group to act on [{n}], \
                             but it acts on [{}]",
                            group.degree()
                        ),
                    ));
                }
                if *k == 0 {
                    return Err(ConfigError::field(field, "power order must be positive"));
                }
                PermRep::power(group, *k).map_err(|e| ConfigError::field(field, e))
            }
            RepSpec::Sum(a, b) => {
                PermRep::sum(&a.build(group, field)?, &b.build(group, field)?)
                    .map_err(|e| ConfigError::field(field, e))
            }
            RepSpec::Mult(base, f) => {
                if *f == 0 {
                    return Err(ConfigError::field(field, "multiplicity must be positive"));
                }
                PermRep::mult(&base.build(group, field)?, *f)
                    .map_err(|e| ConfigError::field(field, e))
            }
        }
    }

    /// The subgroup a transitive coset representation quotients by, when the
    /// spec names one (`regular` counts as `cosets(trivial)`).
    fn coset_subgroup(&self) -> Option<SubgroupSpec> {
        match self {
            RepSpec::Regular => Some(SubgroupSpec::Trivial),
            RepSpec::Cosets(sub) => Some(sub.clone()),
            _ => None,
        }
    }
}

/// One layer of a config file.
#[derive(Debug, Clone, Deserialize)]
pub struct LayerConfig {
    pub source: String,
    pub target: String,
    pub generators: serde_json::Value,
    pub bias: serde_json::Value,
}

/// Optional per-config resource limits; CLI flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct LimitsConfig {
    pub max_union_members: Option<usize>,
    pub max_block_size: Option<usize>,
}

impl LimitsConfig {
    pub fn merge_into(&self, limits: &mut EngineLimits) {
        if let Some(m) = self.max_union_members {
            limits.max_union_members = m;
        }
        if let Some(b) = self.max_block_size {
            limits.max_block_size = b;
        }
    }
}

/// A whole architecture config file.
#[derive(Debug, Clone, Deserialize)]
pub struct ArchitectureConfig {
    pub group: String,
    pub activation: String,
    pub layers: Vec<LayerConfig>,
    #[serde(default)]
    pub limits: LimitsConfig,
}

impl ArchitectureConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::field("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Builds and validates the architecture.
    pub fn build(&self) -> Result<Architecture, ConfigError> {
        let group_spec = GroupSpec::parse(&self.group)?;
        let group = group_spec.build()?;
        // Validated for the error message; the tag itself stays a string.
        crate::empirical::ActivationKind::parse(&self.activation)
            .map_err(|e| ConfigError::field("activation", e))?;
        if self.layers.is_empty() {
            return Err(ConfigError::field("layers", "need at least one layer"));
        }
        let mut layers = Vec::with_capacity(self.layers.len());
        for (i, lc) in self.layers.iter().enumerate() {
            layers.push(build_layer(&group, lc, i)?);
        }
        Architecture::new(layers, &self.activation)
            .map_err(|e| ConfigError::field("layers", e))
    }
}

fn build_layer(
    group: &Arc<Group>,
    lc: &LayerConfig,
    index: usize,
) -> Result<LayerSpace, ConfigError> {
    let src_field = format!("layers[{index}].source");
    let tgt_field = format!("layers[{index}].target");
    let gen_field = format!("layers[{index}].generators");
    let bias_field = format!("layers[{index}].bias");

    let source_spec = RepSpec::parse(&lc.source).map_err(|e| rewrap(e, &src_field))?;
    let target_spec = RepSpec::parse(&lc.target).map_err(|e| rewrap(e, &tgt_field))?;
    let source = source_spec.build(group, &src_field)?;
    let target = target_spec.build(group, &tgt_field)?;

    let linear: EquivariantBasis = match &lc.generators {
        serde_json::Value::String(s) if s == "full" => commutant_basis(&source, &target)
            .map_err(|e| ConfigError::field(&gen_field, e))?,
        serde_json::Value::String(s) if s == "double_coset" => {
            let k = source_spec.coset_subgroup().ok_or_else(|| {
                ConfigError::field(
                    &gen_field,
                    "double_coset generators need a regular or cosets(…) source",
                )
            })?;
            let h = target_spec.coset_subgroup().ok_or_else(|| {
                ConfigError::field(
                    &gen_field,
                    "double_coset generators need a regular or cosets(…) target",
                )
            })?;
            let k = k.build(group, &gen_field)?;
            let h = h.build(group, &gen_field)?;
            double_coset_basis(&k, &h).map_err(|e| ConfigError::field(&gen_field, e))?
        }
        serde_json::Value::String(s) if s.starts_with("circular") => {
            let mut p = Parser::new(s, &gen_field);
            let (name, args) = p.call()?;
            p.finish()?;
            if name != "circular" || args.len() != 1 {
                return Err(ConfigError::field(&gen_field, "expected circular(k)"));
            }
            let k = args[0].as_int(&gen_field)?;
            let layer = circular_layer(source.dim(), k)
                .map_err(|e| ConfigError::field(&gen_field, e))?;
            // Rebind the circulant generators to the configured reps; the
            // equivariance check rejects groups that are not the rotation
            // action on [n].
            EquivariantBasis::explicit(
                source.clone(),
                target.clone(),
                layer.linear_generators().generators().to_vec(),
            )
            .map_err(|e| ConfigError::field(&gen_field, e))?
        }
        serde_json::Value::Array(mats) => {
            let generators = mats
                .iter()
                .map(|m| parse_matrix(m, target.dim(), source.dim(), &gen_field))
                .collect::<Result<Vec<_>, _>>()?;
            EquivariantBasis::explicit(source.clone(), target.clone(), generators)
                .map_err(|e| ConfigError::field(&gen_field, e))?
        }
        other => {
            return Err(ConfigError::field(
                &gen_field,
                format!(
                    "expected \"full\", \"circular(k)\", \"double_coset\", or an array \
                     of matrices, got {other}"
                ),
            ))
        }
    };

    let bias = match &lc.bias {
        serde_json::Value::String(s) if s == "orbit" => {
            BiasSpec::Complete(crate::equivariant::orbit_partition(&target))
        }
        serde_json::Value::String(s) if s == "null" => BiasSpec::Null,
        serde_json::Value::Array(blocks) => {
            let blocks: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| {
                    b.as_array()
                        .ok_or_else(|| {
                            ConfigError::field(&bias_field, "partition parts must be arrays")
                        })?
                        .iter()
                        .map(|v| {
                            v.as_u64().map(|u| u as usize).ok_or_else(|| {
                                ConfigError::field(&bias_field, "indices must be non-negative")
                            })
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let partition = SetPartition::new(target.dim(), blocks)
                .map_err(|e| ConfigError::field(&bias_field, e))?;
            BiasSpec::Complete(partition)
        }
        other => {
            return Err(ConfigError::field(
                &bias_field,
                format!("expected \"orbit\", \"null\", or a partition, got {other}"),
            ))
        }
    };

    LayerSpace::new(linear, bias).map_err(|e| ConfigError::field(format!("layers[{index}]"), e))
}

fn rewrap(e: ConfigError, field: &str) -> ConfigError {
    match e {
        ConfigError::Field { message, .. } => ConfigError::field(field, message),
        other => other,
    }
}

fn parse_matrix(
    value: &serde_json::Value,
    rows: usize,
    cols: usize,
    field: &str,
) -> Result<RatMatrix, ConfigError> {
    let row_values = value
        .as_array()
        .ok_or_else(|| ConfigError::field(field, "matrix must be an array of rows"))?;
    if row_values.len() != rows {
        return Err(ConfigError::field(
            field,
            format!("matrix has {} rows, expected {rows}", row_values.len()),
        ));
    }
    let mut out = Vec::with_capacity(rows);
    for rv in row_values {
        let entries = rv
            .as_array()
            .ok_or_else(|| ConfigError::field(field, "matrix row must be an array"))?;
        if entries.len() != cols {
            return Err(ConfigError::field(
                field,
                format!("row has {} entries, expected {cols}", entries.len()),
            ));
        }
        let row: Vec<Rational> = entries
            .iter()
            .map(|e| parse_entry(e, field))
            .collect::<Result<_, _>>()?;
        out.push(row);
    }
    Ok(RatMatrix::from_rows(out))
}

fn parse_entry(value: &serde_json::Value, field: &str) -> Result<Rational, ConfigError> {
    match value {
        serde_json::Value::String(s) => {
            parse_rational(s).map_err(|e| ConfigError::field(field, e))
        }
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::exactlin::rat(i))
            } else {
                Err(ConfigError::field(
                    field,
                    format!("non-integer numeric entry {n}; use a \"p/q\" string"),
                ))
            }
        }
        other => Err(ConfigError::field(field, format!("bad matrix entry {other}"))),
    }
}

/// Comma-separated exact rationals, e.g. `1,1/2,-3`.
pub fn parse_rational_vector(text: &str) -> Result<Vec<Rational>, ConfigError> {
    text.split(',')
        .map(|part| parse_rational(part).map_err(|e| ConfigError::field("vector", e)))
        .collect()
}

/// Comma-separated floats for the empirical oracle.
pub fn parse_float_vector(text: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| ConfigError::field("vector", format!("{part:?}: {e}")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Recursive-descent parser for the spec grammars.

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

enum Arg {
    Int(usize),
    Group(GroupSpec),
    Rep(RepSpec),
    Sub(SubgroupSpec),
    Perms(Vec<Vec<usize>>),
}

impl Arg {
    fn as_int(&self, field: &str) -> Result<usize, ConfigError> {
        match self {
            Arg::Int(n) => Ok(*n),
            _ => Err(ConfigError::field(field, "expected an integer argument")),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: String,
}

impl Parser {
    fn new(text: &str, field: &str) -> Self {
        let mut tokens = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\n' => i += 1,
                '(' => {
                    tokens.push(Token::LParen);
                    i += 1;
                }
                ')' => {
                    tokens.push(Token::RParen);
                    i += 1;
                }
                '[' => {
                    tokens.push(Token::LBracket);
                    i += 1;
                }
                ']' => {
                    tokens.push(Token::RBracket);
                    i += 1;
                }
                ',' => {
                    tokens.push(Token::Comma);
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: usize = chars[start..i].iter().collect::<String>().parse().unwrap();
                    tokens.push(Token::Int(n));
                }
                'a'..='z' | 'A'..='Z' | '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    tokens.push(Token::Ident(
                        chars[start..i].iter().collect::<String>().to_lowercase(),
                    ));
                }
                other => {
                    tokens.push(Token::Ident(format!("<bad char {other:?}>")));
                    i += 1;
                }
            }
        }
        Parser {
            tokens,
            pos: 0,
            field: field.to_string(),
        }
    }

    fn err(&self, message: impl std::fmt::Display) -> ConfigError {
        ConfigError::field(&self.field, message)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, ConfigError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err("unexpected end of spec"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, token: Token) -> Result<(), ConfigError> {
        let t = self.next()?;
        if t == token {
            Ok(())
        } else {
            Err(self.err(format!("expected {token:?}, found {t:?}")))
        }
    }

    fn finish(&self) -> Result<(), ConfigError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.err("trailing input after spec"))
        }
    }

    fn ident(&mut self) -> Result<String, ConfigError> {
        match self.next()? {
            Token::Ident(s) => Ok(s),
            other => Err(self.err(format!("expected a name, found {other:?}"))),
        }
    }

    /// `name(arg, …)` with heuristically typed arguments; also accepts a
    /// bare `name`.
    fn call(&mut self) -> Result<(String, Vec<Arg>), ConfigError> {
        let name = self.ident()?;
        if self.peek() != Some(&Token::LParen) {
            return Ok((name, Vec::new()));
        }
        self.expect(Token::LParen)?;
        let mut args = Vec::new();
        loop {
            let arg = match self.peek() {
                Some(Token::Int(_)) => {
                    let Token::Int(n) = self.next()? else {
                        unreachable!()
                    };
                    Arg::Int(n)
                }
                Some(Token::LBracket) => Arg::Perms(self.perm_list()?),
                Some(Token::Ident(id)) => {
                    let id = id.clone();
                    match id.as_str() {
                        "cyclic" | "symmetric" | "dihedral" | "product" | "generated" => {
                            Arg::Group(self.group_spec()?)
                        }
                        "trivial" | "full" | "alternating" | "generated_subgroup" => {
                            Arg::Sub(self.subgroup_spec()?)
                        }
                        _ => Arg::Rep(self.rep_spec()?),
                    }
                }
                other => return Err(self.err(format!("unexpected token {other:?}"))),
            };
            args.push(arg);
            match self.next()? {
                Token::Comma => continue,
                Token::RParen => break,
                other => return Err(self.err(format!("expected ',' or ')', found {other:?}"))),
            }
        }
        Ok((name, args))
    }

    /// `[[0,1,2], [1,0,2], …]`.
    fn perm_list(&mut self) -> Result<Vec<Vec<usize>>, ConfigError> {
        self.expect(Token::LBracket)?;
        let mut perms = Vec::new();
        loop {
            self.expect(Token::LBracket)?;
            let mut images = Vec::new();
            loop {
                match self.next()? {
                    Token::Int(n) => images.push(n),
                    other => return Err(self.err(format!("expected an index, found {other:?}"))),
                }
                match self.next()? {
                    Token::Comma => continue,
                    Token::RBracket => break,
                    other => {
                        return Err(self.err(format!("expected ',' or ']', found {other:?}")))
                    }
                }
            }
            perms.push(images);
            match self.next()? {
                Token::Comma => continue,
                Token::RBracket => break,
                other => return Err(self.err(format!("expected ',' or ']', found {other:?}"))),
            }
        }
        Ok(perms)
    }

    fn group_spec(&mut self) -> Result<GroupSpec, ConfigError> {
        let (name, mut args) = self.call()?;
        match (name.as_str(), args.len()) {
            ("cyclic", 1) => Ok(GroupSpec::Cyclic(args[0].as_int(&self.field)?)),
            ("symmetric", 1) => Ok(GroupSpec::Symmetric(args[0].as_int(&self.field)?)),
            ("dihedral", 1) => Ok(GroupSpec::Dihedral(args[0].as_int(&self.field)?)),
            ("product", 2) => {
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                match (a, b) {
                    (Arg::Group(a), Arg::Group(b)) => {
                        Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
                    }
                    _ => Err(self.err("product(…) takes two group specs")),
                }
            }
            ("generated", 1) => match args.pop().unwrap() {
                Arg::Perms(p) => Ok(GroupSpec::Generated(p)),
                _ => Err(self.err("generated(…) takes a permutation list")),
            },
            (other, n) => Err(self.err(format!("unknown group spec {other}({n} args)"))),
        }
    }

    fn subgroup_spec(&mut self) -> Result<SubgroupSpec, ConfigError> {
        let (name, mut args) = self.call()?;
        match (name.as_str(), args.len()) {
            ("trivial", 0) => Ok(SubgroupSpec::Trivial),
            ("full", 0) => Ok(SubgroupSpec::Full),
            ("alternating", 0) => Ok(SubgroupSpec::Alternating),
            ("generated_subgroup", 1) => match args.pop().unwrap() {
                Arg::Perms(p) => Ok(SubgroupSpec::Generated(p)),
                _ => Err(self.err("generated_subgroup(…) takes a permutation list")),
            },
            (other, n) => Err(self.err(format!("unknown subgroup spec {other}({n} args)"))),
        }
    }

    fn rep_spec(&mut self) -> Result<RepSpec, ConfigError> {
        let (name, mut args) = self.call()?;
        match (name.as_str(), args.len()) {
            ("regular", 0) => Ok(RepSpec::Regular),
            ("cosets", 1) => match args.pop().unwrap() {
                Arg::Sub(s) => Ok(RepSpec::Cosets(s)),
                _ => Err(self.err("cosets(…) takes a subgroup spec")),
            },
            ("power", 2) => Ok(RepSpec::Power {
                n: args[0].as_int(&self.field)?,
                k: args[1].as_int(&self.field)?,
            }),
            ("sum", 2) => {
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                match (a, b) {
                    (Arg::Rep(a), Arg::Rep(b)) => Ok(RepSpec::Sum(Box::new(a), Box::new(b))),
                    _ => Err(self.err("sum(…) takes two rep specs")),
                }
            }
            ("mult", 2) => {
                let f = args.pop().unwrap().as_int(&self.field)?;
                match args.pop().unwrap() {
                    Arg::Rep(a) => Ok(RepSpec::Mult(Box::new(a), f)),
                    _ => Err(self.err("mult(…) takes a rep spec and a multiplicity")),
                }
            }
            (other, n) => Err(self.err(format!("unknown rep spec {other}({n} args)"))),
        }
    }
}
