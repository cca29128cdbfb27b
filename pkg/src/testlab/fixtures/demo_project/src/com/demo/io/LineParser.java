package com.demo.io;

import com.demo.util.Text;

public class LineParser {
    private String delimiter;
    private boolean strict;

    public LineParser(String delimiter, boolean strict) {
        this.delimiter = delimiter;
        this.strict = strict;
    }

    public String[] parse(String line) {
        if (line == null) {
            if (strict) {
                throw new IllegalArgumentException("null line");
            }
            return new String[0];
        }
        int parts = Text.countChar(line, delimiter.charAt(0)) + 1;
        String[] out = new String[parts];
        int start = 0;
        int slot = 0;
        for (int i = 0; i < line.length(); i++) {
            if (line.charAt(i) == delimiter.charAt(0)) {
                out[slot] = line.substring(start, i);
                slot++;
                start = i + 1;
            }
        }
        out[slot] = line.substring(start);
        return out;
    }

    public int countValid(String[] lines) {
        int good = 0;
        for (int i = 0; i < lines.length; i++) {
            try {
                String[] cells = parse(lines[i]);
                if (cells.length > 0 && !cells[0].isEmpty()) {
                    good++;
                }
            } catch (IllegalArgumentException e) {
                continue;
            }
        }
        return good;
    }

    public boolean isStrict() { return strict; }
}
