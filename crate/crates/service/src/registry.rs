//! Run registry backed by one artifact file per finished run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use pareto_robust::artifact::RunArtifact;
use pareto_robust::run::{self, RunConfig};
use serde::{Deserialize, Serialize};
use tokio::sync::Semaphore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Pending,
    Running,
    Done,
    Failed,
}

#[derive(Debug, Clone)]
pub struct RunEntry {
    pub status: RunStatus,
    pub artifact: Option<Arc<RunArtifact>>,
    pub error: Option<String>,
}

impl RunEntry {
    fn pending() -> Self {
        Self {
            status: RunStatus::Pending,
            artifact: None,
            error: None,
        }
    }
}

pub struct Registry {
    data_dir: PathBuf,
    runs: RwLock<BTreeMap<String, RunEntry>>,
    workers: Arc<Semaphore>,
}

impl Registry {
    /// Opens `data_dir`, creating it if needed, and registers every artifact
    /// found there as a finished run.
    pub fn open(data_dir: impl Into<PathBuf>, workers: usize) -> std::io::Result<Arc<Self>> {
        let data_dir = data_dir.into();
        std::fs::create_dir_all(&data_dir)?;
        let mut runs = BTreeMap::new();
        for entry in std::fs::read_dir(&data_dir)? {
            let path = entry?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let Some(id) = path.file_stem().and_then(|s| s.to_str()).map(str::to_owned) else {
                continue;
            };
            match RunArtifact::read(&path) {
                Ok(a) => {
                    runs.insert(
                        id,
                        RunEntry {
                            status: RunStatus::Done,
                            artifact: Some(Arc::new(a)),
                            error: None,
                        },
                    );
                }
                Err(e) => log::warn!("skipping {}: {e}", path.display()),
            }
        }
        log::info!("{} runs loaded from {}", runs.len(), data_dir.display());
        Ok(Arc::new(Self {
            data_dir,
            runs: RwLock::new(runs),
            workers: Arc::new(Semaphore::new(workers.max(1))),
        }))
    }

    pub fn data_dir(&self) -> &Path {
        &self.data_dir
    }

    pub fn get(&self, id: &str) -> Option<RunEntry> {
        self.runs.read().expect("registry lock").get(id).cloned()
    }

    fn set(&self, id: &str, entry: RunEntry) {
        self.runs.write().expect("registry lock").insert(id.to_owned(), entry);
    }

    /// Queues a validated config. The run id is the config digest, so an
    /// identical config maps to the existing run unless that run failed.
    pub fn submit(self: &Arc<Self>, config: RunConfig) -> (String, RunStatus) {
        let id = config.digest();
        {
            let mut runs = self.runs.write().expect("registry lock");
            if let Some(existing) = runs.get(&id).filter(|e| e.status != RunStatus::Failed) {
                return (id, existing.status);
            }
            runs.insert(id.clone(), RunEntry::pending());
        }
        let registry = Arc::clone(self);
        let run_id = id.clone();
        tokio::spawn(async move { registry.execute(run_id, config).await });
        (id, RunStatus::Pending)
    }

    async fn execute(self: Arc<Self>, id: String, config: RunConfig) {
        let Ok(_permit) = Arc::clone(&self.workers).acquire_owned().await else {
            return;
        };
        self.set(
            &id,
            RunEntry {
                status: RunStatus::Running,
                ..RunEntry::pending()
            },
        );
        let path = self.data_dir.join(format!("{id}.json"));
        let outcome = tokio::task::spawn_blocking(move || {
            let artifact = run::execute(&config)?;
            artifact.write(&path)?;
            Ok::<_, pareto_robust::Error>(artifact)
        })
        .await;
        let entry = match outcome {
            Ok(Ok(artifact)) => RunEntry {
                status: RunStatus::Done,
                artifact: Some(Arc::new(artifact)),
                error: None,
            },
            Ok(Err(e)) => failed(e.to_string()),
            Err(e) => failed(format!("worker panicked: {e}")),
        };
        log::info!("run {id}: {:?}", entry.status);
        self.set(&id, entry);
    }
}

fn failed(message: String) -> RunEntry {
    RunEntry {
        status: RunStatus::Failed,
        artifact: None,
        error: Some(message),
    }
}
