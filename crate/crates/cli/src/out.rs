//! JSON shapes written by the CLI. Keys come out sorted, rationals as
//! canonical strings, integers as JSON numbers.

use serde_json::{json, Map, Number, Value};

use theta_core::torsion::TorsionGroup;
use theta_core::{Error, Int, Point, Rat, ThetaTriple};

pub fn int(n: &Int) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer text is a JSON number"))
}

pub fn rat(q: &Rat) -> Value {
    Value::String(q.to_string())
}

pub fn abc(t: &ThetaTriple) -> Value {
    json!({ "a": rat(t.a()), "b": rat(t.b()), "c": rat(t.c()) })
}

pub fn point(p: &Point) -> Value {
    match p {
        Point::Infinity => json!({ "infinity": true }),
        Point::Affine { x, y } => json!({ "x": rat(x), "y": rat(y) }),
    }
}

pub fn context(t: &ThetaTriple) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("r".into(), int(t.angle().r()));
    m.insert("s".into(), int(t.angle().s()));
    m.insert("N".into(), int(t.n()));
    m
}

pub fn torsion_points(group: &TorsionGroup) -> Value {
    Value::Array(
        group
            .points
            .iter()
            .map(|tp| {
                let mut v = point(&tp.point);
                v["order"] = json!(tp.order);
                v
            })
            .collect(),
    )
}

pub fn error(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}
