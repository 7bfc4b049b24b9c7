import { ApiClient } from "./api.js";
import { App } from "./ui.js";

const app = new App(new ApiClient());
void app.start();
