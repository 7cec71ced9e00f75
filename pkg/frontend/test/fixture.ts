export const PORT = 8765;
export const BASE_URL = `http://127.0.0.1:${PORT}`;
export const WORKDIR = "/tmp/facetdht-ui-fixture";
export const SCRIPT: [number, number][] = [
  [0, 0],
  [1, 1],
  [2, 0],
];
export const SCRIPT_TEXT = SCRIPT.map(([p, v]) => `${p}=${v}`).join(",");
