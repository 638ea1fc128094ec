//! Architecture description and the flat parameter layout derived from it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The tasks known to the consortium.
///
/// The first three are federated training tasks; `DownstreamVessel` exists
/// only for last-layer transfer and never participates in federated rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    HingeOstia,
    MembranousSeptum,
    Calcification,
    DownstreamVessel,
}

impl TaskKind {
    /// The three tasks trained in federated rounds.
    pub const FEDERATED: [TaskKind; 3] = [
        TaskKind::HingeOstia,
        TaskKind::MembranousSeptum,
        TaskKind::Calcification,
    ];

    /// Landmark names, in channel order, for point-detection tasks.
    /// Segmentation tasks return an empty slice.
    pub fn landmark_names(self) -> &'static [&'static str] {
        match self {
            TaskKind::HingeOstia => &["RCC", "LCC", "NCC", "RCO", "LCO"],
            TaskKind::MembranousSeptum => &["MS1", "MS2"],
            TaskKind::Calcification | TaskKind::DownstreamVessel => &[],
        }
    }

    /// Number of target channels the task's head emits per grid cell.
    pub fn target_channels(self) -> usize {
        match self {
            TaskKind::HingeOstia => 5,
            TaskKind::MembranousSeptum => 2,
            TaskKind::Calcification | TaskKind::DownstreamVessel => 1,
        }
    }

    pub fn is_landmark_task(self) -> bool {
        !self.landmark_names().is_empty()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::HingeOstia => "hinge_ostia",
            TaskKind::MembranousSeptum => "membranous_septum",
            TaskKind::Calcification => "calcification",
            TaskKind::DownstreamVessel => "downstream_vessel",
        }
    }

    pub fn parse(s: &str) -> Result<TaskKind> {
        match s {
            "hinge_ostia" => Ok(TaskKind::HingeOstia),
            "membranous_septum" => Ok(TaskKind::MembranousSeptum),
            "calcification" => Ok(TaskKind::Calcification),
            "downstream_vessel" => Ok(TaskKind::DownstreamVessel),
            other => Err(Error::InvalidConfig(format!("unknown task {other:?}"))),
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Relu,
    Tanh,
}

/// Shared-backbone, per-task-head architecture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArch {
    /// Flattened grid cells (single input channel).
    pub input_dim: usize,
    /// Widths of the fully connected backbone layers.
    pub backbone_layers: Vec<usize>,
    /// Task → flattened output dimension (channels × grid cells).
    pub head_specs: BTreeMap<TaskKind, usize>,
    pub activation: Activation,
    /// Backbone layer indices emitting auxiliary outputs for deep supervision.
    /// Tap at list position `j` emits at 2^(j+1)× spatial downsampling.
    pub deep_supervision_taps: Vec<usize>,
}

impl ModelArch {
    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 {
            return Err(Error::InvalidArch("input_dim must be positive".into()));
        }
        if self.backbone_layers.is_empty() {
            return Err(Error::InvalidArch("backbone_layers must be non-empty".into()));
        }
        if self.backbone_layers.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArch("backbone layer widths must be positive".into()));
        }
        if self.head_specs.is_empty() {
            return Err(Error::InvalidArch("at least one head required".into()));
        }
        for (task, &dim) in &self.head_specs {
            if dim == 0 {
                return Err(Error::InvalidArch(format!("head {task} output_dim must be positive")));
            }
            if dim % self.input_dim != 0 {
                return Err(Error::InvalidArch(format!(
                    "head {task} output_dim {dim} is not a whole number of {}-cell channel maps",
                    self.input_dim
                )));
            }
        }
        for (j, &tap) in self.deep_supervision_taps.iter().enumerate() {
            if tap >= self.backbone_layers.len() {
                return Err(Error::InvalidArch(format!(
                    "deep supervision tap {tap} out of range for {} backbone layers",
                    self.backbone_layers.len()
                )));
            }
            let factor = 4usize.pow(j as u32 + 1);
            if self.input_dim % factor != 0 {
                return Err(Error::InvalidArch(format!(
                    "input_dim {} not divisible by {factor} required by tap level {j}",
                    self.input_dim
                )));
            }
        }
        Ok(())
    }

    pub fn last_backbone_width(&self) -> usize {
        *self.backbone_layers.last().expect("validated non-empty")
    }

    /// Channels of the task's head when interpreted as a per-cell map.
    pub fn head_channels(&self, task: TaskKind) -> Result<usize> {
        let dim = *self
            .head_specs
            .get(&task)
            .ok_or_else(|| Error::MissingHead(task.to_string()))?;
        Ok(dim / self.input_dim)
    }

    /// Ordered plan of every parameter segment with its matrix shape
    /// (`rows` × `cols`; biases have `cols == 0`). Layout construction and
    /// initialization both walk this plan, so ordering is defined once.
    pub(crate) fn segment_plan(&self) -> Vec<(SegmentId, usize, usize)> {
        let mut plan = Vec::new();
        let mut prev = self.input_dim;
        for (l, &width) in self.backbone_layers.iter().enumerate() {
            let layer = l as u32;
            plan.push((SegmentId::backbone(layer, ParamKind::Weight), width, prev));
            plan.push((SegmentId::backbone(layer, ParamKind::Bias), width, 0));
            prev = width;
        }
        for (&task, &out_dim) in &self.head_specs {
            plan.push((SegmentId::head(task, 0, ParamKind::Weight), out_dim, prev));
            plan.push((SegmentId::head(task, 0, ParamKind::Bias), out_dim, 0));
            for (j, &tap) in self.deep_supervision_taps.iter().enumerate() {
                let aux_dim = out_dim / 4usize.pow(j as u32 + 1);
                let in_dim = self.backbone_layers[tap];
                let layer = j as u32 + 1;
                plan.push((SegmentId::head(task, layer, ParamKind::Weight), aux_dim, in_dim));
                plan.push((SegmentId::head(task, layer, ParamKind::Bias), aux_dim, 0));
            }
        }
        plan
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentOwner {
    Backbone,
    Head(TaskKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Weight,
    Bias,
}

/// Identity of one parameter segment. Head layer 0 is the primary head;
/// layer `j + 1` is the auxiliary head for deep-supervision tap `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SegmentId {
    pub owner: SegmentOwner,
    pub layer: u32,
    pub kind: ParamKind,
}

impl SegmentId {
    pub fn backbone(layer: u32, kind: ParamKind) -> Self {
        Self { owner: SegmentOwner::Backbone, layer, kind }
    }

    pub fn head(task: TaskKind, layer: u32, kind: ParamKind) -> Self {
        Self { owner: SegmentOwner::Head(task), layer, kind }
    }
}

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let owner = match self.owner {
            SegmentOwner::Backbone => "backbone".to_string(),
            SegmentOwner::Head(t) => format!("head:{t}"),
        };
        let kind = match self.kind {
            ParamKind::Weight => "weight",
            ParamKind::Bias => "bias",
        };
        write!(f, "{owner}/{}/{kind}", self.layer)
    }
}

/// Half-open range of one segment in the flat value vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub id: SegmentId,
    pub offset: usize,
    pub len: usize,
}

/// Ordered segment table mapping segment ids to disjoint ranges that cover
/// the flat value vector exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    segments: Vec<Segment>,
    n_values: usize,
}

impl Layout {
    pub fn for_arch(arch: &ModelArch) -> Result<Layout> {
        arch.validate()?;
        let mut segments = Vec::new();
        let mut offset = 0usize;
        for (id, rows, cols) in arch.segment_plan() {
            let len = if cols == 0 { rows } else { rows * cols };
            segments.push(Segment { id, offset, len });
            offset += len;
        }
        Ok(Layout { segments, n_values: offset })
    }

    pub fn n_values(&self) -> usize {
        self.n_values
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, id: SegmentId) -> Result<Segment> {
        self.segments
            .iter()
            .copied()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::InvalidArch(format!("no segment {id}")))
    }

    /// Range of one segment in the flat vector.
    pub fn range(&self, id: SegmentId) -> Result<std::ops::Range<usize>> {
        let s = self.segment(id)?;
        Ok(s.offset..s.offset + s.len)
    }

    pub fn has_head(&self, task: TaskKind) -> bool {
        self.segments
            .iter()
            .any(|s| s.id.owner == SegmentOwner::Head(task))
    }

    pub fn head_tasks(&self) -> Vec<TaskKind> {
        let mut tasks: Vec<TaskKind> = self
            .segments
            .iter()
            .filter_map(|s| match s.id.owner {
                SegmentOwner::Head(t) => Some(t),
                SegmentOwner::Backbone => None,
            })
            .collect();
        tasks.dedup();
        tasks
    }

    /// Total length of all segments belonging to `owner`.
    pub fn owner_len(&self, owner: SegmentOwner) -> usize {
        self.segments
            .iter()
            .filter(|s| s.id.owner == owner)
            .map(|s| s.len)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_arch() -> ModelArch {
        ModelArch {
            input_dim: 16,
            backbone_layers: vec![3, 2],
            head_specs: BTreeMap::from([(TaskKind::HingeOstia, 5 * 16)]),
            activation: Activation::Tanh,
            deep_supervision_taps: vec![],
        }
    }

    #[test]
    fn layout_covers_values_disjointly() {
        let arch = small_arch();
        let layout = Layout::for_arch(&arch).unwrap();
        let mut covered = vec![false; layout.n_values()];
        for s in layout.segments() {
            for i in s.offset..s.offset + s.len {
                assert!(!covered[i], "overlap at {i}");
                covered[i] = true;
            }
        }
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn head_segment_sizes_match_hand_count() {
        // 2-layer arch on a 16-cell grid, head 5 channels: the head owns
        // last_width x 5G weights plus 5G biases.
        let arch = small_arch();
        let layout = Layout::for_arch(&arch).unwrap();
        let head_len = layout.owner_len(SegmentOwner::Head(TaskKind::HingeOstia));
        assert_eq!(head_len, 2 * (5 * 16) + 5 * 16);
        // Backbone by hand: 16*3 + 3 + 3*2 + 2.
        assert_eq!(layout.owner_len(SegmentOwner::Backbone), 16 * 3 + 3 + 3 * 2 + 2);
    }

    #[test]
    fn validation_rejects_bad_archs() {
        let mut a = small_arch();
        a.backbone_layers.clear();
        assert!(a.validate().is_err());

        let mut b = small_arch();
        b.head_specs.insert(TaskKind::Calcification, 0);
        assert!(b.validate().is_err());

        let mut c = small_arch();
        c.deep_supervision_taps = vec![5];
        assert!(c.validate().is_err());

        // Head not a whole number of channel maps.
        let mut d = small_arch();
        d.head_specs.insert(TaskKind::Calcification, 17);
        assert!(d.validate().is_err());
    }

    #[test]
    fn aux_head_dims_follow_tap_levels() {
        let arch = ModelArch {
            input_dim: 64,
            backbone_layers: vec![6, 4],
            head_specs: BTreeMap::from([(TaskKind::Calcification, 64)]),
            activation: Activation::Relu,
            deep_supervision_taps: vec![0, 1],
        };
        let layout = Layout::for_arch(&arch).unwrap();
        let aux1 = layout
            .segment(SegmentId::head(TaskKind::Calcification, 1, ParamKind::Weight))
            .unwrap();
        assert_eq!(aux1.len, 6 * (64 / 4));
        let aux2 = layout
            .segment(SegmentId::head(TaskKind::Calcification, 2, ParamKind::Weight))
            .unwrap();
        assert_eq!(aux2.len, 4 * (64 / 16));
    }
}
