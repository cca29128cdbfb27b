package com.demo.io;

import com.demo.util.Text;

public class Journal {
    private StringBuilder log;
    private int entries;
    private boolean sealed;

    public Journal() {
        log = new StringBuilder();
        entries = 0;
        sealed = false;
    }

    public void append(String kind, String message) {
        if (sealed) {
            throw new IllegalStateException("journal sealed");
        }
        String head = Text.firstWord(kind == null ? "note" : kind);
        log.append(head);
        log.append(": ");
        log.append(message == null ? "" : message);
        log.append('\n');
        entries++;
    }

    public String summary(int maxKinds) {
        String body = log.toString();
        String[] lines = body.split("\n");
        int shown = 0;
        StringBuilder out = new StringBuilder();
        for (int i = 0; i < lines.length && shown < maxKinds; i++) {
            if (lines[i].isEmpty()) {
                continue;
            }
            out.append(lines[i]);
            out.append(';');
            shown++;
        }
        return out.toString();
    }

    public void seal() {
        sealed = true;
    }

    public boolean isSealed() { return sealed; }

    public int getEntries() { return entries; }
}
