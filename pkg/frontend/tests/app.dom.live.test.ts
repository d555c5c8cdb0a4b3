// @vitest-environment jsdom
/**
 * Drives the assembled page the way a user would: connect, upload,
 * select text with DOM ranges, watch marks and the side panel change.
 * Runs against a live service process and the real index.html markup;
 * the app module is imported after the DOM exists, exactly as the
 * browser does it.
 */

import { spawn, ChildProcess } from "node:child_process";
import { readFileSync, mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

const PORT = 19300 + (process.pid % 1000);
const BASE = `http://127.0.0.1:${PORT}`;

const DOCUMENT = [
  "房屋租赁合同书𠮷字第88号",
  "出租方（甲方）：北京𠀀𠀁置业有限公司🏠",
  "承租方（乙方）：张𪚥伟",
  "一、租赁期自2019年1月1日起，至2020年12月31日止。",
  "二、月租金为28000元（人民币贰万捌仟元整）。",
].join("\n");

let server: ChildProcess;
let dataDir: string;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id} in the page markup`);
  return node as T;
}

function click(id: string): void {
  byId<HTMLButtonElement>(id).click();
}

/** Poll until the view settles; the app's handlers are fire-and-forget. */
async function until(check: () => boolean, what: string): Promise<void> {
  const deadline = Date.now() + 10_000;
  while (!check()) {
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}; status: "${byId("status").textContent}"`);
    }
    await new Promise((r) => setTimeout(r, 25));
  }
}

function selectInParagraph(para: number, node: Node, fromU: number, toU: number): void {
  const range = document.createRange();
  range.setStart(node, fromU);
  range.setEnd(node, toU);
  const selection = window.getSelection()!;
  selection.removeAllRanges();
  selection.addRange(range);
  byId("docview").dispatchEvent(new MouseEvent("mouseup", { bubbles: true }));
  void para;
}

function paragraphBlock(index: number): HTMLElement {
  const block = document.querySelector(`#docview p[data-para="${index}"]`);
  if (!block) throw new Error(`paragraph ${index} not rendered`);
  return block as HTMLElement;
}

function pickPalette(typeId: string): void {
  const buttons = [...document.querySelectorAll<HTMLButtonElement>("#palette button")];
  const target = buttons.find((b) => b.textContent?.includes(`(${typeId})`));
  if (!target) throw new Error(`no palette entry for ${typeId}`);
  target.click();
}

beforeAll(async () => {
  expect(typeof fetch, "node's fetch must survive the jsdom environment").toBe("function");

  dataDir = mkdtempSync(join(tmpdir(), "docelem-dom-"));
  server = spawn("docelem", ["serve", "--port", String(PORT), "--data-dir", dataDir], {
    stdio: ["ignore", "ignore", "pipe"],
  });
  let stderr = "";
  server.stderr?.on("data", (chunk) => (stderr += String(chunk)));
  const deadline = Date.now() + 60_000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/healthz`);
      if (res.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline || server.exitCode !== null) {
      throw new Error(`service did not come up on ${BASE}\n${stderr}`);
    }
    await new Promise((r) => setTimeout(r, 250));
  }

  // the real page markup, minus the script tag; the module is imported
  // below instead, after the elements it wires exist
  const html = readFileSync(join(__dirname, "..", "index.html"), "utf-8");
  const body = html.slice(html.indexOf("<body>") + 6, html.indexOf("</body>"));
  document.body.innerHTML = body.replace(/<script[\s\S]*?<\/script>/, "");
  await import("../src/app.js");
}, 90_000);

afterAll(async () => {
  server?.kill("SIGTERM");
  await new Promise((resolve) => {
    server?.once("exit", resolve);
    setTimeout(resolve, 5_000);
  });
  rmSync(dataDir, { recursive: true, force: true });
});

describe("annotation page", () => {
  let docId = "";

  it("connects and fills the palette from the served schema", async () => {
    byId<HTMLInputElement>("base-url").value = BASE;
    click("connect");
    await until(
      () => document.querySelectorAll("#palette button").length > 0,
      "palette buttons",
    );
    expect(byId("status").textContent).toContain("connected");
    const labels = [...document.querySelectorAll("#palette button")].map((b) => b.textContent);
    expect(labels.some((l) => l?.includes("(rent)"))).toBe(true);
    expect(labels.some((l) => l?.includes("(lessee)"))).toBe(true);
  });

  it("uploads a document and renders one block per paragraph", async () => {
    byId<HTMLTextAreaElement>("upload-text").value = DOCUMENT;
    click("upload");
    await until(
      () => document.querySelectorAll("#docview p").length === 5,
      "five paragraph blocks",
    );
    docId = byId<HTMLInputElement>("doc-id").value;
    expect(docId).not.toBe("");
    expect(paragraphBlock(4).textContent).toBe("二、月租金为28000元（人民币贰万捌仟元整）。");
  });

  it("turns a text selection into a stored, marked annotation", async () => {
    pickPalette("rent");
    const textNode = paragraphBlock(4).firstChild!;
    selectInParagraph(4, textNode, 6, 12); // 28000元
    await until(
      () => document.querySelectorAll("#annotations li").length === 1,
      "the annotation row",
    );
    const row = document.querySelector("#annotations li")!;
    expect(row.querySelector("b")?.textContent).toBe("28000元");
    const mark = paragraphBlock(4).querySelector("mark");
    expect(mark?.textContent).toBe("28000元");
    expect(window.getSelection()?.isCollapsed ?? true).toBe(true);
  });

  it("widens a selection that starts inside a surrogate pair", async () => {
    pickPalette("lessee");
    // 张𪚥伟: offsets 9 and 10 are the two halves of 𪚥
    const textNode = paragraphBlock(2).firstChild!;
    selectInParagraph(2, textNode, 10, 11);
    await until(
      () => document.querySelectorAll("#annotations li").length === 2,
      "the second annotation row",
    );
    const surfaces = [...document.querySelectorAll("#annotations li b")].map(
      (b) => b.textContent,
    );
    expect(surfaces).toContain("𪚥");
  });

  it("flags an overlapping selection and points at the existing span", async () => {
    pickPalette("rent");
    const mark = paragraphBlock(4).querySelector("mark")!;
    selectInParagraph(4, mark.firstChild!, 1, 4); // 800, inside 28000元
    await until(
      () => byId("status").classList.contains("error"),
      "the overlap status message",
    );
    expect(byId("status").textContent).toContain("overlaps");
    expect(paragraphBlock(4).querySelector("mark.conflict")).not.toBeNull();
    expect(document.querySelectorAll("#annotations li")).toHaveLength(2);
  });

  it("refuses a cross-paragraph selection without a request", async () => {
    pickPalette("lessor");
    const range = document.createRange();
    range.setStart(paragraphBlock(0).firstChild!, 2);
    range.setEnd(paragraphBlock(1).firstChild!, 3);
    const selection = window.getSelection()!;
    selection.removeAllRanges();
    selection.addRange(range);
    byId("docview").dispatchEvent(new MouseEvent("mouseup", { bubbles: true }));
    await until(
      () => byId("status").textContent?.includes("cross") ?? false,
      "the cross-paragraph message",
    );
    expect(document.querySelectorAll("#annotations li")).toHaveLength(2);
  });

  it("runs inference and shows the normalized record with derived values", async () => {
    pickPalette("start_date");
    selectInParagraph(3, paragraphBlock(3).firstChild!, 6, 15); // 2019年1月1日
    await until(() => document.querySelectorAll("#annotations li").length === 3, "date row");
    // the paragraph is now [text][mark][text]; select inside the tail,
    // which makes the point mapping count the text before it
    pickPalette("end_date");
    const tail = paragraphBlock(3).lastChild!;
    expect(tail.textContent).toBe("起，至2020年12月31日止。");
    selectInParagraph(3, tail, 3, 14); // 2020年12月31日
    await until(() => document.querySelectorAll("#annotations li").length === 4, "date row");

    click("infer");
    await until(() => document.querySelector("#panel table") !== null, "the record table");
    expect(document.querySelectorAll("#docview mark.inferred").length).toBeGreaterThan(0);

    const rows = [...document.querySelectorAll("#panel tbody tr")].map((tr) =>
      [...tr.querySelectorAll("td")].map((td) => td.textContent?.trim()),
    );
    const term = rows.find((cells) => cells[1]?.startsWith("2y"));
    expect(term, "derived lease term row").toBeDefined();
    expect(term![1]).toContain("derived");
  }, 15_000);

  it("shows an explicit empty result for a document with no matches", async () => {
    byId<HTMLTextAreaElement>("upload-text").value = "这份文件没有任何可以识别的条款。";
    click("upload");
    await until(
      () => document.querySelectorAll("#docview p").length === 1,
      "the second document",
    );
    click("infer");
    await until(() => document.querySelector("#panel .empty-result") !== null, "empty result");
    expect(byId("panel").textContent).toContain("no elements found");
  });

  it("deletes an annotation from the list and clears its mark", async () => {
    byId<HTMLInputElement>("doc-id").value = docId;
    click("open");
    await until(
      () => document.querySelectorAll("#annotations li").length === 4,
      "the first document again",
    );
    const lessee = [...document.querySelectorAll("#annotations li")].find(
      (li) => li.querySelector("b")?.textContent === "𪚥",
    );
    expect(lessee).toBeDefined();
    lessee!.querySelector("button")!.click();
    await until(
      () => document.querySelectorAll("#annotations li").length === 3,
      "the row to disappear",
    );
    const surfaces = [...document.querySelectorAll("#annotations li b")].map(
      (b) => b.textContent,
    );
    expect(surfaces).not.toContain("𪚥");
    expect(paragraphBlock(2).querySelector("mark")).toBeNull();
  }, 15_000);
});
