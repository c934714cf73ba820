/**
 * Serializes mutations: at most one classification request is in flight,
 * later ones wait their turn in arrival order. Reads are unaffected.
 */

export class MutationQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private depth = 0;

  /** Number of mutations queued or running. */
  get pending(): number {
    return this.depth;
  }

  enqueue<T>(task: () => Promise<T>): Promise<T> {
    this.depth += 1;
    const run = this.tail.then(task);
    // The chain must survive individual failures.
    this.tail = run.catch(() => undefined).finally(() => {
      this.depth -= 1;
    });
    return run;
  }
}
