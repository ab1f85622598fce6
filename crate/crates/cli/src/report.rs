//! JSON records. Everything mathematical is an exact string; timing stays
//! out of these records so that reruns compare equal.

use serde_json::{json, Value};

use gw_welschinger::enumerate::{kontsevich_n, ConfigFile, CountReport, PointConfiguration};
use gw_welschinger::gwforms::QuadForm;

pub fn config_json(cfg: &PointConfiguration, d: u32) -> Value {
    serde_json::to_value(ConfigFile::from_configuration(cfg, Some(d))).expect("configuration serializes")
}

/// Class of a rank-one form: the square-class representative of its entry.
pub fn square_class_json(q: &QuadForm) -> Value {
    let inv = q.invariants();
    json!({ "form": q.to_string(), "square_class": inv.disc.rep.to_string() })
}

pub fn count_json(rep: &CountReport, cfg: &PointConfiguration, seed: u64) -> Value {
    let inv = &rep.invariants;
    let expected = kontsevich_n(rep.degree).and_then(|t| t.last().cloned()).map(|n| n.to_string());
    let hasse: serde_json::Map<String, Value> = inv.hasse.iter().map(|(p, s)| (p.to_string(), json!(s))).collect();
    let d = &rep.diagnostics;
    json!({
        "seed": seed,
        "field": cfg.base().to_string(),
        "degree": rep.degree,
        "extension_type": rep.extension_type,
        "configuration": config_json(cfg, rep.degree),
        "rank": rep.rank(),
        "classical_count": expected,
        "signature": inv.signature,
        "disc": inv.disc.rep.to_string(),
        "disc_certified": inv.disc.certified,
        "hasse": hasse,
        "unresolved_cofactors": inv.unresolved.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "form": rep.form.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "diagnostics": {
            "pencil": d.pencil,
            "discriminant": d.discriminant,
            "curve": d.curve,
        },
    })
}
