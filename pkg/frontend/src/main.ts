/** Browser entry point: wire the app to real video elements. */

import { ApiClient } from "./api.js";
import { RatingApp } from "./app.js";
import { videoAdapter } from "./player.js";

export function mount(root: HTMLElement, baseUrl: string, studyId: string, raterId: string) {
  const api = new ApiClient(baseUrl, studyId);
  const app = new RatingApp({
    api,
    raterId,
    root,
    adapterFactory: (mediaUrl) => {
      const video = document.createElement("video");
      video.src = `${baseUrl}/api/media/${mediaUrl}`;
      video.controls = true;
      root.querySelector(".players")?.append(video);
      return videoAdapter(video);
    },
  });
  void app.start();
  return app;
}

declare global {
  interface Window {
    mountRatingApp?: typeof mount;
  }
}

if (typeof window !== "undefined") {
  window.mountRatingApp = mount;
}
