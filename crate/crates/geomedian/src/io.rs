use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::GeoError;
use crate::graph::NetworkGraph;
use crate::instance::GeoMedianInstance;

/// On-disk instance format, version 1. Points are flat row-major; edges
/// are the undirected non-self pairs with a < b, sorted. The mixing matrix
/// is not stored: it is a pure function of the edge list, so an identical
/// file always reproduces an identical instance.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    version: u32,
    n: usize,
    d: usize,
    seed: u64,
    connectivity_ratio: f64,
    radius: f64,
    points: Vec<f64>,
    edges: Vec<(usize, usize)>,
}

pub fn instance_to_json(instance: &GeoMedianInstance) -> String {
    let file = InstanceFile {
        version: 1,
        n: instance.num_agents(),
        d: instance.dim(),
        seed: instance.seed(),
        connectivity_ratio: instance.connectivity_ratio(),
        radius: instance.radius(),
        points: instance.points().to_vec(),
        edges: instance.graph().edges(),
    };
    serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
}

pub fn instance_from_json(json: &str, origin: &str) -> Result<GeoMedianInstance, GeoError> {
    let file: InstanceFile = serde_json::from_str(json).map_err(|source| GeoError::Parse {
        path: origin.to_string(),
        source,
    })?;
    if file.version != 1 {
        return Err(GeoError::UnsupportedVersion(file.version));
    }
    let graph = NetworkGraph::from_edges(file.n, &file.edges)?;
    GeoMedianInstance::new(
        file.points,
        file.n,
        file.d,
        file.radius,
        graph,
        file.seed,
        file.connectivity_ratio,
    )
}

pub fn save_instance(instance: &GeoMedianInstance, path: &Path) -> Result<(), GeoError> {
    fs::write(path, instance_to_json(instance)).map_err(|source| GeoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_instance(path: &Path) -> Result<GeoMedianInstance, GeoError> {
    let json = fs::read_to_string(path).map_err(|source| GeoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    instance_from_json(&json, &path.display().to_string())
}
