import { ApiClient } from "./api.js";
import { ExplorerStore } from "./state.js";
import { RANGE_PRESETS, type CentroidMap, type Meta, type RangePreset } from "./types.js";

const $ = (id: string): HTMLElement => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
};

function showBanner(message: string | null): void {
  const banner = $("banner");
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";
}

function renderPng(img: HTMLImageElement, png: Uint8Array): void {
  const blob = new Blob([png.buffer as ArrayBuffer], { type: "image/png" });
  const url = URL.createObjectURL(blob);
  const old = img.src;
  img.src = url;
  if (old.startsWith("blob:")) URL.revokeObjectURL(old);
}

class ExplorerApp {
  private readonly api: ApiClient;
  private store!: ExplorerStore;
  private meta!: Meta;
  private centroids: CentroidMap | null = null;
  private sliders: HTMLInputElement[] = [];
  private readouts: HTMLElement[] = [];

  constructor(baseUrl: string) {
    this.api = new ApiClient(baseUrl);
  }

  async start(): Promise<void> {
    showBanner(null);
    try {
      this.meta = await this.api.meta();
      this.centroids = await this.api.centroids();
    } catch (err) {
      showBanner(`Service unreachable: ${err instanceof Error ? err.message : err}`);
      ($("retry") as HTMLButtonElement).style.display = "inline-block";
      return;
    }
    ($("retry") as HTMLButtonElement).style.display = "none";

    const img = $("frame") as HTMLImageElement;
    this.store = new ExplorerStore({
      decode: (z) => this.api.decode(z),
      onFrame: (frame) => {
        renderPng(img, frame.png);
        $("frame-z").textContent = frame.z.map((v) => v.toFixed(3)).join(", ");
        this.syncReadouts();
      },
      onError: (message) => showBanner(`Decode failed: ${message}`),
    });

    this.buildSliders();
    this.buildPresets();
    this.buildCentroidControls();
    this.buildMorphControls();
    this.store.initialize(this.meta.latent_dim);
    $("ckpt").textContent = `checkpoint ${this.meta.checkpoint_id} · ` +
      `${this.meta.image_width}x${this.meta.image_height} · ` +
      `${this.meta.latent_dim}-d latent`;
  }

  private buildSliders(): void {
    const box = $("sliders");
    box.textContent = "";
    this.sliders = [];
    this.readouts = [];
    for (let dim = 0; dim < this.meta.latent_dim; dim++) {
      const row = document.createElement("div");
      row.className = "slider-row";
      const label = document.createElement("span");
      label.textContent = `z${dim}`;
      const input = document.createElement("input");
      input.type = "range";
      input.min = "-5";
      input.max = "5";
      input.step = "0.01";
      input.value = "0";
      input.addEventListener("input", () => {
        this.store.setSlider(dim, Number(input.value));
        this.readouts[dim].textContent = Number(input.value).toFixed(2);
      });
      const readout = document.createElement("span");
      readout.className = "readout";
      readout.textContent = "0.00";
      row.append(label, input, readout);
      box.append(row);
      this.sliders.push(input);
      this.readouts.push(readout);
    }
  }

  private syncReadouts(): void {
    this.store.z.forEach((v, dim) => {
      this.sliders[dim].value = String(v);
      this.readouts[dim].textContent = v.toFixed(2);
    });
  }

  private buildPresets(): void {
    const box = $("presets");
    box.textContent = "range ±";
    for (const preset of RANGE_PRESETS) {
      const btn = document.createElement("button");
      btn.textContent = String(preset);
      btn.addEventListener("click", () => this.applyPreset(preset));
      box.append(btn);
    }
  }

  private applyPreset(preset: RangePreset): void {
    this.store.setRangePreset(preset);
    for (const slider of this.sliders) {
      slider.min = String(-preset);
      slider.max = String(preset);
      slider.step = preset >= 100 ? "1" : "0.01";
    }
  }

  private centroidSelect(id: string): HTMLSelectElement {
    const select = $(id) as HTMLSelectElement;
    select.textContent = "";
    for (const name of Object.keys(this.centroids ?? {})) {
      const opt = document.createElement("option");
      opt.value = name;
      opt.textContent = name;
      select.append(opt);
    }
    return select;
  }

  private buildCentroidControls(): void {
    const jump = this.centroidSelect("centroid-jump");
    const button = $("jump") as HTMLButtonElement;
    const enabled = this.centroids !== null && Object.keys(this.centroids).length > 0;
    button.disabled = !enabled;
    jump.disabled = !enabled;
    button.addEventListener("click", () => {
      const table = this.centroids;
      if (table && jump.value in table) {
        this.store.jumpTo(table[jump.value]);
        this.syncReadouts();
      }
    });
  }

  private buildMorphControls(): void {
    const selA = this.centroidSelect("morph-a");
    const selB = this.centroidSelect("morph-b");
    const scrub = $("scrub") as HTMLInputElement;
    const setBtn = $("set-endpoints") as HTMLButtonElement;
    const enabled = this.centroids !== null && Object.keys(this.centroids).length >= 2;
    setBtn.disabled = !enabled;
    scrub.disabled = true;
    setBtn.addEventListener("click", () => {
      const table = this.centroids;
      if (!table) return;
      this.store.setMorphEndpoints(table[selA.value], table[selB.value]);
      scrub.disabled = false;
      scrub.value = "0";
      this.store.scrub(0);
      this.syncReadouts();
    });
    scrub.addEventListener("input", () => {
      this.store.scrub(Number(scrub.value));
      this.syncReadouts();
    });
  }
}

const app = new ExplorerApp(window.location.origin);
$("retry").addEventListener("click", () => void app.start());
void app.start();
