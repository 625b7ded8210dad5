import { ParitydClient } from "./api";
import { store } from "./store";
import { renderConfig } from "./ui/configView";
import { renderDashboard } from "./ui/dashboard";
import { renderTauSlider } from "./ui/tauSlider";
import { renderUpload } from "./ui/uploadView";
import { renderWizard } from "./ui/wizardView";

// Same-origin by default; ?api=http://host:port points a statically
// hosted build at a service running elsewhere (CORS is open).
const client = new ParitydClient(new URLSearchParams(window.location.search).get("api") ?? "");

async function loadTree(banner: HTMLElement): Promise<void> {
  try {
    const tree = await client.fetchTree();
    store.set({ tree });
    banner.hidden = true;
  } catch {
    banner.hidden = false;
  }
}

function main(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");

  const banner = document.createElement("div");
  banner.className = "banner banner-error";
  banner.hidden = true;
  const bannerText = document.createElement("span");
  bannerText.textContent = "Could not reach the audit service.";
  const retry = document.createElement("button");
  retry.textContent = "Retry";
  retry.addEventListener("click", () => void loadTree(banner));
  banner.append(bannerText, retry);
  root.appendChild(banner);

  const status = document.createElement("div");
  status.className = "banner banner-status";
  status.hidden = true;
  root.appendChild(status);

  renderUpload(root, client);
  renderWizard(root);
  renderConfig(root, client, () => store.get().hasDecisionColumn);
  renderDashboard(root);
  renderTauSlider(root, client);

  store.subscribe((state) => {
    if (state.busy) {
      status.hidden = false;
      status.textContent = "working...";
    } else if (state.error) {
      status.hidden = false;
      status.textContent = state.error;
    } else {
      status.hidden = true;
    }
  });

  void loadTree(banner);
}

main();
