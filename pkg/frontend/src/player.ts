/** Side-by-side playback of the two dyad videos.
 *
 * Each pane can play independently; the sync button aligns both
 * playheads and starts them together. The speaking side's label turns
 * green during voice-activity segments so raters can follow the turn
 * structure without lip cues. Real HTMLVideoElements plug in through
 * the small adapter interface, which headless tests drive with a fake
 * clock.
 */

export interface VadSegment {
  channel: string;
  start_s: number;
  end_s: number;
}

export interface PlayerAdapter {
  play(): void;
  pause(): void;
  getTime(): number;
  seek(time: number): void;
  onTimeUpdate(listener: (time: number) => void): void;
}

export class DualPlayer {
  private playedLeft = false;
  private playedRight = false;
  private highlightListeners: ((channels: Set<string>) => void)[] = [];

  constructor(
    private left: PlayerAdapter,
    private right: PlayerAdapter,
    private vadSegments: VadSegment[] = [],
  ) {
    left.onTimeUpdate((time) => {
      this.playedLeft = this.playedLeft || time > 0;
      this.emitHighlight(time);
    });
    right.onTimeUpdate((time) => {
      this.playedRight = this.playedRight || time > 0;
    });
  }

  playLeft(): void {
    this.left.play();
  }

  playRight(): void {
    this.right.play();
  }

  /** Align playheads, then start both (the "play together" button). */
  syncPlay(): void {
    const anchor = this.left.getTime();
    this.right.seek(anchor);
    this.left.play();
    this.right.play();
  }

  pauseBoth(): void {
    this.left.pause();
    this.right.pause();
  }

  /** True once both candidate videos have actually advanced. */
  bothPlayed(): boolean {
    return this.playedLeft && this.playedRight;
  }

  playheadSkewSeconds(): number {
    return Math.abs(this.left.getTime() - this.right.getTime());
  }

  activeChannels(time: number): Set<string> {
    const active = new Set<string>();
    for (const segment of this.vadSegments) {
      if (time >= segment.start_s && time < segment.end_s) {
        active.add(segment.channel);
      }
    }
    return active;
  }

  onHighlight(listener: (channels: Set<string>) => void): void {
    this.highlightListeners.push(listener);
  }

  private emitHighlight(time: number): void {
    const active = this.activeChannels(time);
    for (const listener of this.highlightListeners) listener(active);
  }
}

/** Adapter over a real <video> element. */
export function videoAdapter(video: HTMLVideoElement): PlayerAdapter {
  return {
    play: () => void video.play(),
    pause: () => video.pause(),
    getTime: () => video.currentTime,
    seek: (time) => {
      video.currentTime = time;
    },
    onTimeUpdate: (listener) =>
      video.addEventListener("timeupdate", () => listener(video.currentTime)),
  };
}

/** Deterministic adapter for headless tests: time advances on tick(). */
export class FakePlayer implements PlayerAdapter {
  private time = 0;
  private playing = false;
  private listeners: ((time: number) => void)[] = [];

  play(): void {
    this.playing = true;
  }

  pause(): void {
    this.playing = false;
  }

  getTime(): number {
    return this.time;
  }

  seek(time: number): void {
    this.time = time;
    this.emit();
  }

  onTimeUpdate(listener: (time: number) => void): void {
    this.listeners.push(listener);
  }

  tick(seconds: number): void {
    if (this.playing) {
      this.time += seconds;
      this.emit();
    }
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.time);
  }
}
