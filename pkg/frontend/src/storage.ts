/** Autosave to browser local storage under the `codia.*` namespace. */

export const BUFFER_KEY = "codia.buffer";
export const SAVED_AT_KEY = "codia.savedAt";

export function saveBuffer(
  storage: Pick<Storage, "setItem">,
  text: string,
  now: () => number = Date.now,
): void {
  storage.setItem(BUFFER_KEY, text);
  storage.setItem(SAVED_AT_KEY, String(now()));
}

export function loadBuffer(storage: Pick<Storage, "getItem">): string | null {
  return storage.getItem(BUFFER_KEY);
}
