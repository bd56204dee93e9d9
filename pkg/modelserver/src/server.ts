/**
 * HTTP surface of the model server.
 *
 * Implements the gateway wire protocol exactly: /v1/embed, /v1/similarity,
 * /v1/nli, /v1/info. All responses are JSON; failures carry {"error": ...}
 * with a non-2xx status. Responses preserve request order for every batched
 * endpoint, embeddings leave L2-normalized, NLI triples leave summing to 1.
 */

import express, { type Express, type Request, type Response } from "express";
import type { ServerConfig } from "./config.js";
import { loadModels, type ModelRegistry } from "./models.js";

class BadRequest extends Error {
  status = 400;
}

class BatchTooLarge extends Error {
  status = 413;
}

function requireStringArray(value: unknown, field: string, maxBatch: number): string[] {
  if (!Array.isArray(value) || value.length === 0) {
    throw new BadRequest(`${field} must be a non-empty array`);
  }
  if (value.length > maxBatch) {
    throw new BatchTooLarge(`${field} exceeds max batch size ${maxBatch}`);
  }
  if (!value.every((x) => typeof x === "string")) {
    throw new BadRequest(`${field} must contain only strings`);
  }
  return value as string[];
}

function normalizeRow(row: number[]): number[] {
  const norm = Math.sqrt(row.reduce((acc, x) => acc + x * x, 0));
  if (norm === 0) return row;
  if (Math.abs(norm - 1) < 1e-9) return row;
  return row.map((x) => x / norm);
}

export function createApp(config: ServerConfig, models?: ModelRegistry): Express {
  const registry =
    models ??
    loadModels(config.embedModelId, config.simModelId, config.nliModelId, config.dim);
  const app = express();
  app.use(express.json({ limit: "16mb" }));

  if (config.authToken) {
    app.use((req, res, next) => {
      if (req.headers.authorization !== `Bearer ${config.authToken}`) {
        res.status(401).json({ error: "missing or invalid bearer token" });
        return;
      }
      next();
    });
  }

  app.get("/v1/info", (_req: Request, res: Response) => {
    res.json({
      embedder_id: registry.embed.id,
      dim: registry.embed.dim,
      models: {
        embed: registry.embed.id,
        similarity: registry.similarity.id,
        nli: registry.nli.id,
      },
    });
  });

  app.post("/v1/embed", (req: Request, res: Response) => {
    const texts = requireStringArray(req.body?.texts, "texts", config.maxBatch);
    const vectors = registry.embed.embed(texts).map(normalizeRow);
    res.json({ dim: registry.embed.dim, vectors });
  });

  app.post("/v1/similarity", (req: Request, res: Response) => {
    if (typeof req.body?.claim !== "string" || req.body.claim.length === 0) {
      throw new BadRequest("claim must be a non-empty string");
    }
    const sentences = requireStringArray(req.body?.sentences, "sentences", config.maxBatch);
    const scores = registry.similarity
      .score(req.body.claim, sentences)
      .map((s) => Math.min(1, Math.max(0, s)));
    res.json({ scores });
  });

  app.post("/v1/nli", (req: Request, res: Response) => {
    const pairs = req.body?.pairs;
    if (!Array.isArray(pairs) || pairs.length === 0) {
      throw new BadRequest("pairs must be a non-empty array");
    }
    if (pairs.length > config.maxBatch) {
      throw new BatchTooLarge(`pairs exceeds max batch size ${config.maxBatch}`);
    }
    const labels = pairs.map((pair: unknown) => {
      const p = pair as { premise?: unknown; hypothesis?: unknown };
      if (typeof p?.premise !== "string" || typeof p?.hypothesis !== "string") {
        throw new BadRequest("each pair needs string premise and hypothesis");
      }
      if (p.premise.length === 0 || p.hypothesis.length === 0) {
        throw new BadRequest("premise and hypothesis must be non-empty");
      }
      const [entailment, neutral, contradiction] = normalizeTriple(
        registry.nli.predict(p.premise, p.hypothesis),
      );
      return { entailment, neutral, contradiction };
    });
    res.json({ labels });
  });

  app.use((_req: Request, res: Response) => {
    res.status(404).json({ error: "unknown endpoint" });
  });

  // Express error middleware needs the 4-arg signature to be recognized.
  app.use((err: Error, _req: Request, res: Response, _next: express.NextFunction) => {
    const status = (err as BadRequest).status ?? 500;
    res.status(status).json({ error: err.message });
  });

  return app;
}

function normalizeTriple(triple: [number, number, number]): [number, number, number] {
  const clamped = triple.map((x) => Math.max(0, x)) as [number, number, number];
  const total = clamped[0] + clamped[1] + clamped[2];
  if (total === 0) return [1 / 3, 1 / 3, 1 / 3];
  return [clamped[0] / total, clamped[1] / total, clamped[2] / total];
}
