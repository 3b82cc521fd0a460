/** Single-page rating app: fetch an item, render it, capture the form.
 *
 * The view is plain DOM: two labelled panes (Anchor context plus the
 * Candidate pair), per-pane play buttons and a sync-play control, the
 * three question sections, and a flag modal listing the protocol's
 * categories. Everything the app knows about the study comes from the
 * JSON endpoints.
 */

import { ApiClient, StudyItem } from "./api.js";
import { RatingForm } from "./form.js";
import { DualPlayer, PlayerAdapter } from "./player.js";
import { parseProtocol, Protocol, questionsBySection, SECTION_ORDER } from "./protocol.js";

export interface AppDeps {
  api: ApiClient;
  raterId: string;
  root: HTMLElement;
  adapterFactory: (mediaUrl: string) => PlayerAdapter;
}

export class RatingApp {
  protocol!: Protocol;
  item: StudyItem | null = null;
  player: DualPlayer | null = null;
  form: RatingForm | null = null;

  constructor(private deps: AppDeps) {}

  async start(): Promise<void> {
    await this.deps.api.register(this.deps.raterId);
    this.protocol = parseProtocol(await this.deps.api.protocol());
    await this.loadNext();
  }

  async loadNext(): Promise<void> {
    const next = await this.deps.api.nextItem(this.deps.raterId);
    if (next.done || !next.item) {
      this.item = null;
      this.deps.root.innerHTML = '<p class="done">Study complete. Thank you!</p>';
      return;
    }
    this.item = next.item;
    this.render(next.item);
  }

  private render(item: StudyItem): void {
    const root = this.deps.root;
    root.innerHTML = "";

    const players = document.createElement("div");
    players.className = "players";
    const labels: Record<string, HTMLElement> = {};
    for (const [role, media] of [
      ["anchor", item.anchor_media],
      ["candidate_a", item.candidate_left_media],
      ["candidate_b", item.candidate_right_media],
    ] as const) {
      const pane = document.createElement("figure");
      pane.className = `pane pane-${role}`;
      const label = document.createElement("figcaption");
      label.textContent =
        role === "anchor" ? "Anchor" : role === "candidate_a" ? "Candidate A" : "Candidate B";
      label.dataset.role = role;
      labels[role] = label;
      pane.append(label);
      pane.dataset.media = media;
      players.append(pane);
    }
    root.append(players);

    const left = this.deps.adapterFactory(item.candidate_left_media);
    const right = this.deps.adapterFactory(item.candidate_right_media);
    this.player = new DualPlayer(left, right, item.vad_segments);
    this.player.onHighlight((channels) => {
      labels["anchor"].classList.toggle("speaking", channels.has("anchor"));
      labels["candidate_a"].classList.toggle("speaking", channels.has("candidate"));
      labels["candidate_b"].classList.toggle("speaking", channels.has("candidate"));
    });
    this.form = new RatingForm(this.protocol, () => this.player!.bothPlayed());

    const controls = document.createElement("div");
    controls.className = "controls";
    for (const [id, text, handler] of [
      ["play-a", "Play A", () => this.player!.playLeft()],
      ["play-b", "Play B", () => this.player!.playRight()],
      ["sync-play", "Play together", () => this.player!.syncPlay()],
    ] as const) {
      const button = document.createElement("button");
      button.id = id;
      button.textContent = text;
      button.addEventListener("click", handler);
      controls.append(button);
    }
    root.append(controls);

    const sections = questionsBySection(this.protocol);
    for (const sectionName of SECTION_ORDER) {
      const questions = sections.get(sectionName) ?? [];
      if (questions.length === 0) continue;
      const fieldset = document.createElement("fieldset");
      fieldset.className = `section section-${sectionName}`;
      fieldset.disabled = !this.form.sectionsUnlocked();
      const legend = document.createElement("legend");
      legend.textContent = sectionName;
      fieldset.append(legend);
      for (const question of questions) {
        const block = document.createElement("div");
        block.className = "question";
        block.dataset.dimension = question.dimension_id;
        const text = document.createElement("p");
        text.textContent = question.text;
        text.title = question.tooltip;
        block.append(text);
        question.options.forEach((option, index) => {
          const label = document.createElement("label");
          const input = document.createElement("input");
          input.type = "radio";
          input.name = question.dimension_id;
          input.value = String(index);
          input.addEventListener("change", () => {
            this.form!.answer(question.dimension_id, index);
            this.refreshSubmitState();
          });
          label.append(input, document.createTextNode(option));
          block.append(label);
        });
        fieldset.append(block);
      }
      root.append(fieldset);
    }

    const submit = document.createElement("button");
    submit.id = "submit";
    submit.textContent = "Submit ratings";
    submit.disabled = true;
    submit.addEventListener("click", () => void this.submit());
    root.append(submit);

    const flagButton = document.createElement("button");
    flagButton.id = "open-flag";
    flagButton.textContent = "Flag this clip";
    flagButton.addEventListener("click", () => this.renderFlagModal());
    root.append(flagButton);

    // unlock the sections once both candidate videos have been played
    const unlock = () => {
      if (this.form!.sectionsUnlocked()) {
        root.querySelectorAll("fieldset").forEach((fs) => (fs.disabled = false));
      }
    };
    left.onTimeUpdate(unlock);
    right.onTimeUpdate(unlock);
  }

  refreshSubmitState(): void {
    const submit = this.deps.root.querySelector<HTMLButtonElement>("#submit");
    if (submit && this.form) submit.disabled = !this.form.isComplete();
  }

  private submitting = false;

  async submit(): Promise<void> {
    if (!this.item || !this.form || this.submitting) return; // duplicate click guard
    this.submitting = true;
    try {
      const response = await this.deps.api.submitRatings(
        this.item.item_id,
        this.deps.raterId,
        this.form.toResponses(),
        this.deps.api.newClientKey(),
      );
      if (!response.ok) throw new Error(`submit failed: ${response.status}`);
      await this.loadNext();
    } finally {
      this.submitting = false;
    }
  }

  renderFlagModal(): void {
    const existing = this.deps.root.querySelector(".flag-modal");
    if (existing) existing.remove();
    const modal = document.createElement("div");
    modal.className = "flag-modal";
    const heading = document.createElement("p");
    heading.textContent = "Please provide your reason for flagging (select all that apply):";
    modal.append(heading);
    for (const category of this.protocol.flag_categories) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.value = category;
      box.className = "flag-category";
      label.append(box, document.createTextNode(category));
      modal.append(label);
    }
    const note = document.createElement("textarea");
    note.id = "flag-note";
    note.placeholder = "Please provide justification for why you are flagging this clip.";
    modal.append(note);
    const error = document.createElement("p");
    error.id = "flag-error";
    modal.append(error);
    const send = document.createElement("button");
    send.id = "send-flag";
    send.textContent = "Flag and skip";
    send.addEventListener("click", () => void this.submitFlag());
    modal.append(send);
    this.deps.root.append(modal);
  }

  async submitFlag(): Promise<void> {
    if (!this.item || !this.form) return;
    const root = this.deps.root;
    const categories = Array.from(
      root.querySelectorAll<HTMLInputElement>(".flag-category:checked"),
    ).map((box) => box.value);
    const note = root.querySelector<HTMLTextAreaElement>("#flag-note")?.value ?? "";
    const problem = this.form.validateFlag({ categories, note });
    const errorNode = root.querySelector<HTMLElement>("#flag-error");
    if (problem) {
      if (errorNode) errorNode.textContent = problem;
      return;
    }
    const response = await this.deps.api.submitFlag(
      this.item.item_id,
      this.deps.raterId,
      categories,
      note,
    );
    if (!response.ok) {
      if (errorNode) errorNode.textContent = `flag failed: ${response.status}`;
      return;
    }
    await this.loadNext();
  }
}
