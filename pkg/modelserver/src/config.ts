/** Server configuration: JSON file first, environment overrides second. */

import { readFileSync } from "node:fs";

export interface ServerConfig {
  embedModelId: string;
  simModelId: string;
  nliModelId: string;
  dim: number;
  port: number;
  maxBatch: number;
  authToken?: string;
}

export const DEFAULTS: ServerConfig = {
  embedModelId: "reference-hash",
  simModelId: "reference-jaccard-sim",
  nliModelId: "reference-heuristic-nli",
  dim: 256,
  port: 8900,
  maxBatch: 256,
};

export function loadConfig(path?: string, env: NodeJS.ProcessEnv = process.env): ServerConfig {
  const config: ServerConfig = { ...DEFAULTS };
  if (path) {
    const file = JSON.parse(readFileSync(path, "utf-8"));
    Object.assign(config, {
      embedModelId: file.embed_model_id ?? config.embedModelId,
      simModelId: file.sim_model_id ?? config.simModelId,
      nliModelId: file.nli_model_id ?? config.nliModelId,
      dim: file.dim ?? config.dim,
      port: file.port ?? config.port,
      maxBatch: file.max_batch ?? config.maxBatch,
      authToken: file.auth_token ?? config.authToken,
    });
  }
  if (env.MODELSERVER_EMBED_MODEL) config.embedModelId = env.MODELSERVER_EMBED_MODEL;
  if (env.MODELSERVER_SIM_MODEL) config.simModelId = env.MODELSERVER_SIM_MODEL;
  if (env.MODELSERVER_NLI_MODEL) config.nliModelId = env.MODELSERVER_NLI_MODEL;
  if (env.MODELSERVER_DIM) config.dim = Number(env.MODELSERVER_DIM);
  if (env.MODELSERVER_PORT) config.port = Number(env.MODELSERVER_PORT);
  if (env.MODELSERVER_MAX_BATCH) config.maxBatch = Number(env.MODELSERVER_MAX_BATCH);
  if (env.MODELSERVER_AUTH_TOKEN) config.authToken = env.MODELSERVER_AUTH_TOKEN;

  if (!Number.isInteger(config.maxBatch) || config.maxBatch < 1) {
    throw new Error(`max_batch must be a positive integer, got ${config.maxBatch}`);
  }
  if (!Number.isInteger(config.dim) || config.dim < 1) {
    throw new Error(`dim must be a positive integer, got ${config.dim}`);
  }
  return config;
}
