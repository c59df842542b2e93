/** Debounced, generation-counted request runner.
 *
 * Every keystroke bumps the generation and restarts the timer; only the
 * newest generation's result is ever delivered, so a slow response for an
 * old buffer can never overwrite feedback for the current one.
 */

export interface RunnerCallbacks<T> {
  /** Called with the result of the newest-generation run. */
  deliver(result: T): void;
  /** Called when the newest-generation run rejects (service unreachable). */
  failed(error: unknown): void;
}

export class DebouncedRunner<T> {
  private generation = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly run: (input: string) => Promise<T>,
    private readonly callbacks: RunnerCallbacks<T>,
    readonly delayMs = 300,
  ) {}

  /** Schedule a run for `text` after the debounce delay. */
  input(text: string): void {
    const generation = ++this.generation;
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(text, generation);
    }, this.delayMs);
  }

  /** True while a run is scheduled but has not fired yet. */
  get pending(): boolean {
    return this.timer !== null;
  }

  private async fire(text: string, generation: number): Promise<void> {
    let result: T;
    try {
      result = await this.run(text);
    } catch (error) {
      if (generation === this.generation) {
        this.callbacks.failed(error);
      }
      return;
    }
    if (generation === this.generation) {
      this.callbacks.deliver(result);
    }
  }
}
