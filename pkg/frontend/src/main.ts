import { GatewayClient } from "./api";
import { BrowserApp } from "./app";

// Gateway base URL: ?gateway=http://host:port, defaulting to same origin.
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("gateway") ?? window.location.origin;

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const app = new BrowserApp(root, new GatewayClient(baseUrl));
void app.start();
