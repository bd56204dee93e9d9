import { loadConfig } from "./config.js";
import { createApp } from "./server.js";

const configPath = process.argv[2];

let app;
let port: number;
try {
  const config = loadConfig(configPath);
  app = createApp(config);
  port = config.port;
} catch (err) {
  // Model or config failures abort startup; never serve a half-loaded stack.
  console.error(`startup failed: ${(err as Error).message}`);
  process.exit(1);
}

app.listen(port, () => {
  console.log(`model server listening on :${port}`);
});
