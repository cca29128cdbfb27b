package com.demo.util;

public class Text {
    public static String repeat(String s, int times) {
        StringBuilder sb = new StringBuilder();
        for (int i = 0; i < times; i++) {
            sb.append(s);
        }
        return sb.toString();
    }

    public static String firstWord(String s) {
        if (s == null || s.isEmpty()) {
            return "";
        }
        int cut = s.indexOf(' ');
        return cut < 0 ? s : s.substring(0, cut);
    }

    public static int countChar(String s, char c) {
        int n = 0;
        for (int i = 0; i < s.length(); i++) {
            if (s.charAt(i) == c) {
                n++;
            }
        }
        return n;
    }

    public static String classify(int length) {
        switch (length) {
            case 0:
                return "empty";
            case 1:
            case 2:
                return "tiny";
            default:
                return length > 40 ? "long" : "normal";
        }
    }
}
