/**
 * Entry point: mount the wizard on #app.
 *
 * The service origin comes from the `api` query parameter (e.g.
 * `index.html?api=http://127.0.0.1:8000`); without it the page assumes it is
 * served from the same origin as the API.
 */

import { ApiClient } from "./api.js";
import { Wizard } from "./wizard.js";

const base = new URLSearchParams(window.location.search).get("api") ?? "";
const root = document.querySelector<HTMLElement>("#app");
if (root) {
  void new Wizard(root, new ApiClient(base)).start();
}
