//! Run artifacts on disk: trace.csv, events.jsonl, summary.json and
//! config.echo. Float columns use a fixed 9-significant-digit decimal
//! rendering so identical runs produce byte-identical files.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use wsnsim_core::config::ScenarioConfig;
use wsnsim_core::crypto::OpenError;
use wsnsim_core::engine::{Event, EventKind, RunOutput, RunSummary, TraceRow};
use wsnsim_core::keying::AuthOutcome;
use wsnsim_core::topology::{AdjacencyMap, Deployment};

use crate::schema::echo_toml;

/// Render with 9 significant digits: the decimal count adapts to the
/// magnitude (values at or above 1e9 fall back to integral digits).
/// Rounding is the default round-half-to-even of the formatter.
pub fn sig9(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (8 - exp).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

fn opt_sig9(v: Option<f64>) -> String {
    v.map(sig9).unwrap_or_default()
}

/// One row per polled node per step:
/// `t,node_id,x,x_hat,e,b,action,missing`.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 48 + 64);
    out.push_str("t,node_id,x,x_hat,e,b,action,missing\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.t,
            r.node.0,
            opt_sig9(r.x),
            opt_sig9(r.x_hat),
            opt_sig9(r.e),
            sig9(r.b),
            r.action.name(),
            u8::from(r.missing),
        ));
    }
    out
}

#[derive(Serialize)]
struct EventRecord {
    t: u64,
    node: u32,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cause: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    voter: Option<u32>,
    provenance: &'static str,
}

fn auth_cause(outcome: AuthOutcome) -> &'static str {
    match outcome {
        AuthOutcome::Accepted => "accepted",
        AuthOutcome::BadTag => "bad_tag",
        AuthOutcome::NoSharedKey => "no_shared_key",
        AuthOutcome::Revoked => "revoked",
    }
}

fn open_cause(cause: OpenError) -> &'static str {
    match cause {
        OpenError::UnknownSender => "unknown_sender",
        OpenError::BadTag => "bad_tag",
        OpenError::Replay => "replay",
    }
}

fn event_record(ev: &Event) -> EventRecord {
    let (kind, cause, voter) = match ev.kind {
        EventKind::AuthAccepted => ("auth_accepted", None, None),
        EventKind::AuthRejected { outcome } => ("auth_rejected", Some(auth_cause(outcome)), None),
        EventKind::OpenRejected { cause } => ("open_rejected", Some(open_cause(cause)), None),
        EventKind::Dropped => ("dropped", None, None),
        EventKind::Quarantined => ("quarantined", None, None),
        EventKind::Readmitted => ("readmitted", None, None),
        EventKind::Alarmed => ("alarmed", None, None),
        EventKind::AvailabilityAlarm => ("availability_alarm", None, None),
        EventKind::RevocationVote { voter } => ("revocation_vote", None, Some(voter.0)),
        EventKind::Revoked => ("revoked", None, None),
    };
    EventRecord { t: ev.t, node: ev.node.0, kind, cause, voter, provenance: ev.provenance.name() }
}

/// One JSON object per line, in emission order.
pub fn events_jsonl(events: &[Event]) -> String {
    let mut out = String::with_capacity(events.len() * 64);
    for ev in events {
        out.push_str(&serde_json::to_string(&event_record(ev)).expect("event serializes"));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct DetectionJson {
    node: u32,
    attack_start: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    quarantined_at: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    latency: Option<u64>,
}

#[derive(Serialize)]
struct SummaryJson<'a> {
    detections: Vec<DetectionJson>,
    true_positives: u32,
    false_negatives: u32,
    false_positives: u32,
    rejections: RejectionsJson,
    availability_alarms: u32,
    revocations: u32,
    final_trust: &'a [f64],
    messages: MessagesJson,
}

#[derive(Serialize)]
struct RejectionsJson {
    open_unknown_sender: u64,
    open_bad_tag: u64,
    open_replay: u64,
    auth_no_shared_key: u64,
    auth_bad_tag: u64,
    auth_revoked: u64,
}

#[derive(Serialize)]
struct MessagesJson {
    sent: u64,
    accepted: u64,
    rejected: u64,
    dropped: u64,
}

pub fn summary_json(summary: &RunSummary) -> String {
    let doc = SummaryJson {
        detections: summary
            .detections
            .iter()
            .map(|d| DetectionJson {
                node: d.node.0,
                attack_start: d.attack_start,
                quarantined_at: d.quarantined_at,
                latency: d.latency(),
            })
            .collect(),
        true_positives: summary.true_positives,
        false_negatives: summary.false_negatives,
        false_positives: summary.false_positives,
        rejections: RejectionsJson {
            open_unknown_sender: summary.rejections.open_unknown_sender,
            open_bad_tag: summary.rejections.open_bad_tag,
            open_replay: summary.rejections.open_replay,
            auth_no_shared_key: summary.rejections.auth_no_shared_key,
            auth_bad_tag: summary.rejections.auth_bad_tag,
            auth_revoked: summary.rejections.auth_revoked,
        },
        availability_alarms: summary.availability_alarms,
        revocations: summary.revocations,
        final_trust: &summary.final_trust,
        messages: MessagesJson {
            sent: summary.messages.sent,
            accepted: summary.messages.accepted,
            rejected: summary.messages.rejected,
            dropped: summary.messages.dropped,
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("summary serializes");
    s.push('\n');
    s
}

/// CSV of `(node_id, x, y, peripheral, neighbors)`; neighbor ids are
/// semicolon-joined.
pub fn topology_csv(deployment: &Deployment, adjacency: &AdjacencyMap) -> String {
    let mut out = String::from("node_id,x,y,peripheral,neighbors\n");
    for id in deployment.node_ids() {
        let p = deployment.position(id).expect("deployed");
        let neighbors: Vec<String> =
            adjacency.of(id).iter().map(|n| n.0.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            id.0,
            sig9(p[0]),
            sig9(p[1]),
            u8::from(deployment.is_peripheral(id).expect("deployed")),
            neighbors.join(";"),
        ));
    }
    out
}

/// Write trace.csv, events.jsonl, summary.json and config.echo into `dir`
/// (created if needed).
pub fn write_outputs(dir: &Path, cfg: &ScenarioConfig, out: &RunOutput) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("trace.csv"), trace_csv(&out.trace))?;
    fs::write(dir.join("events.jsonl"), events_jsonl(&out.events))?;
    fs::write(dir.join("summary.json"), summary_json(&out.summary))?;
    fs::write(dir.join("config.echo"), echo_toml(cfg))?;
    Ok(())
}
