//! Command implementations behind the `gitstrata` binary. Each command
//! returns a [`Report`]; rendering it twice for the same inputs gives the
//! same bytes.

use std::fs;
use std::path::{Path, PathBuf};

use gitstrata_core::blowup::{self, CellGraph};
use gitstrata_core::hkkn::{self, PointSupport};
use gitstrata_core::p1::{self, Configuration};
use gitstrata_core::poly::HNType;
use gitstrata_core::rational::fmt_rational;
use gitstrata_core::sheaf::{self, Length2Sheaf, SplitBundle};
use gitstrata_core::{io, Cocharacter, HilbertPolynomial, WeightSystem, ENGINE_VERSION};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gitstrata_core::Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("invalid argument --{flag}: {message}")]
    Arg { flag: &'static str, message: String },
}

pub type Result<T> = std::result::Result<T, CliError>;

fn arg(flag: &'static str) -> impl FnOnce(gitstrata_core::Error) -> CliError {
    move |e| CliError::Arg { flag, message: e.to_string() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Value,
    pub inputs_hash: String,
    pub outputs: Value,
}

impl Report {
    fn new(command: Value, outputs: Value) -> Self {
        let inputs_hash = sha256_hex(command.to_string().as_bytes());
        Report { command, inputs_hash, outputs }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "engine_version": ENGINE_VERSION,
            "inputs_hash": self.inputs_hash,
            "outputs": self.outputs,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("JSON values always serialise");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn utf8(path: &Path, bytes: &[u8]) -> Result<String> {
    String::from_utf8(bytes.to_vec()).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn support_json(x: &PointSupport) -> Value {
    json!(x.indices().iter().collect::<Vec<_>>())
}

/// Where cached index sets live: `GITSTRATA_CACHE_DIR`, else `.gitstrata-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("GITSTRATA_CACHE_DIR").map_or_else(|| PathBuf::from(".gitstrata-cache"), PathBuf::from)
}

fn index_set_outputs(ws: &WeightSystem) -> Result<Value> {
    let betas: Vec<String> = ws.index_set()?.iter().map(ToString::to_string).collect();
    Ok(json!({ "betas": betas }))
}

/// The index set of a weight-system file. Results are cached under
/// `cache_dir`, keyed by the SHA-256 of the engine version and file contents.
pub fn cmd_index_set(input: &Path, cache_dir: Option<&Path>) -> Result<Report> {
    let bytes = read_input(input)?;
    let file_hash = sha256_hex(&bytes);
    let command = json!({ "name": "index-set", "input_sha256": file_hash });
    let key = sha256_hex(&[ENGINE_VERSION.as_bytes(), b"\0", &bytes].concat());
    let cache_file = cache_dir.map(|d| d.join(format!("{key}.json")));
    if let Some(cached) = cache_file.as_deref().and_then(|f| fs::read_to_string(f).ok()) {
        if let Ok(outputs) = serde_json::from_str::<Value>(&cached) {
            return Ok(Report::new(command, outputs));
        }
    }
    let ws = io::parse_weight_system(&utf8(input, &bytes)?)?;
    let outputs = index_set_outputs(&ws)?;
    if let (Some(dir), Some(file)) = (cache_dir, cache_file) {
        let write = fs::create_dir_all(dir).and_then(|()| fs::write(&file, outputs.to_string()));
        write.map_err(|e| CliError::Io { path: file, message: e.to_string() })?;
    }
    Ok(Report::new(command, outputs))
}

pub fn cmd_stratify(input: &Path, support: &str) -> Result<Report> {
    let bytes = read_input(input)?;
    let ws = io::parse_weight_system(&utf8(input, &bytes)?)?;
    let x = PointSupport::parse(support, &ws).map_err(arg("support"))?;
    let st = ws.stratum_of(&x)?;
    let mut outputs = json!({
        "beta": st.beta.to_string(),
        "norm_sq": fmt_rational(&st.norm_sq),
        "raw_beta": st.raw_beta.to_string(),
        "status": format!("{:?}", ws.semistability(&x)?),
        "support": support_json(&x),
        "in_y": Value::Null,
        "in_z": Value::Null,
        "limit_support": Value::Null,
    });
    if !st.raw_beta.is_zero() {
        let lambda = Cocharacter::new(st.raw_beta.clone());
        outputs["in_y"] = json!(ws.membership_y(&x, &st.raw_beta)?);
        outputs["in_z"] = json!(ws.membership_z(&x, &st.raw_beta)?);
        outputs["limit_support"] = support_json(&ws.limit_support(&x, &lambda)?);
    }
    let command = json!({ "name": "stratify", "input_sha256": sha256_hex(&bytes), "support": support_json(&x) });
    Ok(Report::new(command, outputs))
}

pub fn cmd_p1(n: usize, points: &str, i: Option<usize>) -> Result<Report> {
    let c = Configuration::parse(points).map_err(arg("points"))?;
    if c.n() != n {
        return Err(CliError::Arg { flag: "points", message: format!("{} points given, --n is {n}", c.n()) });
    }
    let mut outputs = json!({
        "configuration": c.to_string(),
        "beta": fmt_rational(&p1::classify(&c)),
        "engine_beta": fmt_rational(&p1::engine_stratum(&c)?),
        "support": support_json(&p1::to_support(&c)),
        "yz": Value::Null,
        "ts": Value::Null,
    });
    if let Some(i) = i {
        outputs["yz"] = json!(p1::membership_yz(&c, i).map_err(arg("i"))?.to_string());
        outputs["ts"] = json!(p1::membership_ts(&c, i).map_err(arg("i"))?);
    }
    let command = json!({ "name": "p1", "n": n, "points": c.to_string(), "i": i });
    Ok(Report::new(command, outputs))
}

pub fn cmd_beta_type(tau: &str, total: &str, n: i64, m: i64) -> Result<Report> {
    let total: HilbertPolynomial = total.parse().map_err(arg("P"))?;
    let tau = HNType::parse(tau).map_err(arg("tau"))?;
    let tau = HNType::with_total(tau.entries().to_vec(), &total).map_err(arg("tau"))?;
    let beta = gitstrata_core::beta_of_type(&tau, n, m)?;
    let blocks = hkkn::parabolic_blocks(&beta.expanded())?;
    let entries: Vec<Value> = beta.entries().iter().map(|(b, k)| json!([fmt_rational(b), k])).collect();
    let outputs = json!({
        "beta_vector": entries,
        "trace_check": fmt_rational(&beta.trace()),
        "dim_unipotent": blocks.dim_unipotent,
        "blocks": serde_json::to_value(&blocks).expect("serialisable"),
    });
    let command = json!({ "name": "beta-type", "tau": tau.to_string(), "P": total.to_string(), "n": n, "m": m });
    Ok(Report::new(command, outputs))
}

pub fn cmd_hn(splitting: &str) -> Result<Report> {
    let b = SplitBundle::parse(splitting).map_err(arg("splitting"))?;
    let hn = sheaf::hn_filtration(&b)?;
    let pieces: Vec<Value> =
        hn.pieces.iter().map(|p| json!({ "slope": p.slope, "degrees": p.bundle.degrees() })).collect();
    let tau: Vec<String> = hn.tau.entries().iter().map(ToString::to_string).collect();
    let mut outputs = json!({
        "splitting": b.degrees(),
        "hilbert_polynomial": sheaf::hilbert_poly(&b).to_string(),
        "pieces": pieces,
        "tau": tau,
        "end_dim": sheaf::end_dim(&b),
        "length2": Value::Null,
    });
    if hn.tau.len() == 2 {
        let s = Length2Sheaf::from_split(&b)?;
        let dims = sheaf::stab_dims(&s)?;
        outputs["length2"] = json!({
            "hom_dim": s.hom_dim,
            "tau_stable": sheaf::is_tau_stable(&s)?,
            "indecomposable": sheaf::is_indecomposable(&s)?,
            "ustab_dim": dims.ustab_dim,
            "end_dim_claim": dims.end_dim_claim,
        });
    }
    let command = json!({ "name": "hn", "splitting": b.degrees() });
    Ok(Report::new(command, outputs))
}

pub fn cmd_blowup(input: &Path) -> Result<Report> {
    let bytes = read_input(input)?;
    let graph: CellGraph = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Core(gitstrata_core::Error::Parse(format!("cell graph: {e}"))))?;
    let state = blowup::init_state(graph.cells)?;
    let initial = json!({ "d_min": state.d_min, "d_max": state.d_max, "p_preserves": state.p_preserves,
        "zmin": state.zmin_ids, "basin": state.basin_ids() });
    let out = blowup::run(state)?;
    let outputs = json!({
        "initial": initial,
        "steps": out.state.step_count,
        "trace": serde_json::to_value(&out.state.trace).expect("serialisable"),
        "survivors": out.survivors,
        "final": { "d_min": out.state.d_min, "d_max": out.state.d_max, "zmin": out.state.zmin_ids },
    });
    let command = json!({ "name": "blowup", "input_sha256": sha256_hex(&bytes) });
    Ok(Report::new(command, outputs))
}

/// A weight-system file for `SL(2)` acting on `Sym^n(P^1)`.
pub fn sym_power_file(n: usize) -> String {
    let mut s = serde_json::to_string_pretty(&io::weight_system_to_json(&WeightSystem::sym_power(n)))
        .expect("JSON values always serialise");
    s.push('\n');
    s
}
