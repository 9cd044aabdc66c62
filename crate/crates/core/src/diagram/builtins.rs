use super::{parse_diagram, MorseDiagram};
use crate::error::{OqaError, Result};

const FIXED: &[(&str, &str)] = &[
    ("curl", "boundary: open / cup_cw 1 / xp 0 / cap_cw 1"),
    ("curl_op", "boundary: open_down / cup_ccw 1 / xp 0 / cap_ccw 1"),
    ("trefoil_tangle", "boundary: open / cup_ccw 0 / xp 1 / xp 1 / xp 1 / cap_ccw 0"),
    ("trefoil_knot", "cup_ccw 0 / cup_cw 2 / xp 1 / xp 1 / xp 1 / cap_cw 2 / cap_ccw 0"),
    ("hopf", "cup_ccw 0 / cup_cw 2 / xp 1 / xp 1 / cap_cw 2 / cap_ccw 0"),
    (
        "figure8_knot",
        "cup_cw 0 / cup_cw 1 / cup_cw 2 / xp 0 / xn 1 / xp 0 / xn 1 / cap_cw 2 / cap_cw 1 / cap_cw 0",
    ),
    ("unknot_cw", "cup_cw 0 / cap_cw 0"),
    ("unknot_ccw", "cup_ccw 0 / cap_ccw 0"),
];

/// The four families of circles with `m` kinks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurlFamily {
    RPlus,
    RMinus,
    LPlus,
    LMinus,
}

impl CurlFamily {
    pub const ALL: [CurlFamily; 4] = [CurlFamily::RPlus, CurlFamily::RMinus, CurlFamily::LPlus, CurlFamily::LMinus];

    pub fn name(self) -> &'static str {
        match self {
            CurlFamily::RPlus => "c_r_plus",
            CurlFamily::RMinus => "c_r_minus",
            CurlFamily::LPlus => "c_l_plus",
            CurlFamily::LMinus => "c_l_minus",
        }
    }

    fn from_name(s: &str) -> Option<CurlFamily> {
        CurlFamily::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// A counterclockwise circle with `m` kinks on its right (`R*`), or a clockwise circle with `m`
/// kinks on its left (`L*`); `Plus` kinks use `xp`, `Minus` kinks `xn`.
pub fn curl_family(family: CurlFamily, m: usize) -> MorseDiagram {
    let x = match family {
        CurlFamily::RPlus | CurlFamily::LPlus => "xp",
        CurlFamily::RMinus | CurlFamily::LMinus => "xn",
    };
    let (outer_cup, kink, outer_cap) = match family {
        CurlFamily::RPlus | CurlFamily::RMinus => ("cup_ccw 0", format!("cup_cw 2 / {x} 1 / cap_cw 2"), "cap_ccw 0"),
        CurlFamily::LPlus | CurlFamily::LMinus => ("cup_cw 0", format!("cup_ccw 0 / {x} 1 / cap_ccw 0"), "cap_cw 0"),
    };
    let mut parts = vec![outer_cup.to_string()];
    parts.extend(std::iter::repeat(kink).take(m));
    parts.push(outer_cap.to_string());
    parse_diagram(&parts.join(" / ")).expect("curl family words are valid")
}

/// Builtin names; the families are written `c_r_plus(m)` and so on.
pub fn builtin_names() -> Vec<String> {
    let mut out: Vec<String> = FIXED.iter().map(|(n, _)| n.to_string()).collect();
    out.extend(CurlFamily::ALL.iter().map(|f| format!("{}(m)", f.name())));
    out
}

/// Looks up a builtin diagram by name. Families take their kink count as `name(m)`, `name:m` or
/// `name m`.
pub fn builtin(name: &str) -> Result<MorseDiagram> {
    let name = name.trim();
    if let Some((_, word)) = FIXED.iter().find(|(n, _)| *n == name) {
        return Ok(parse_diagram(word).expect("builtin words are valid"));
    }
    let unknown = || OqaError::UnknownBuiltin(name.to_string());
    let split = name
        .find(['(', ':', ' '])
        .map(|k| (&name[..k], name[k + 1..].trim_end_matches(')').trim()))
        .ok_or_else(unknown)?;
    let family = CurlFamily::from_name(split.0).ok_or_else(unknown)?;
    let m = split.1.parse::<usize>().map_err(|_| unknown())?;
    Ok(curl_family(family, m))
}
