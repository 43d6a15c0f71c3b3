import { Api } from "./api.js";
import { createApp } from "./controller.js";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app mount point");
createApp(root, new Api(""));
