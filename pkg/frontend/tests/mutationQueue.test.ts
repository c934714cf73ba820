import { describe, expect, it } from "vitest";

import { MutationQueue } from "../src/mutationQueue.js";

function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("MutationQueue", () => {
  it("runs tasks one at a time in arrival order", async () => {
    const queue = new MutationQueue();
    const events: string[] = [];
    const first = deferred<void>();

    const a = queue.enqueue(async () => {
      events.push("a:start");
      await first.promise;
      events.push("a:end");
    });
    const b = queue.enqueue(async () => {
      events.push("b:start");
    });

    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(events).toEqual(["a:start"]);
    expect(queue.pending).toBe(2);

    first.resolve();
    await Promise.all([a, b]);
    expect(events).toEqual(["a:start", "a:end", "b:start"]);
    expect(queue.pending).toBe(0);
  });

  it("keeps going after a failure", async () => {
    const queue = new MutationQueue();
    const failing = queue.enqueue(async () => {
      throw new Error("boom");
    });
    await expect(failing).rejects.toThrow("boom");
    const ok = await queue.enqueue(async () => 42);
    expect(ok).toBe(42);
  });
});
